#pragma once

// The classical Clifford algebra Cl(F^n + (F^n)^*) by direct word rewriting
// under the canonical anticommutation relations
//   v_i v_j = -v_j v_i,  v_i^* v_j^* = -v_j^* v_i^*,  v_i^* v_j = -v_j v_i^* (i != j),
//   v_i^* v_i = 1 - v_i v_i^*,  v_i^2 = (v_i^*)^2 = 0.
// This engine shares no code with the quantum normal form and serves as an
// independent oracle for the k = 1/2 algebra.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qcl::classical {

/// Letter key 2*i + star for v_{i+1} (star = 0) or v_{i+1}^* (star = 1).
using Word = std::vector<uint8_t>;
/// Normal words have strictly increasing keys.
using Combination = std::map<Word, mpq_class>;

inline uint8_t letter(int index, bool star) { return static_cast<uint8_t>(2 * (index - 1) + (star ? 1 : 0)); }

/// Rewrites an arbitrary word into normal words.
Combination normalize(const Word& word);
Combination multiply(const Combination& x, const Combination& y);
/// Text such as `-v1*vd1 + 2*v2`, with vdi standing for v_i^*.
std::string to_string(const Combination& x);

}  // namespace qcl::classical
