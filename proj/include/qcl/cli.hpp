#pragma once

// Expression language and command-line front end.
//
//   texpr  := tterm (('+' | '-') tterm)*
//   tterm  := expr ('@' expr)*              (tensor factors, gamma only)
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*    (the divisor must be a scalar)
//   unary  := '-' unary | power
//   power  := atom ('^' '-'? integer)?
//   atom   := integer | q | s | zeta | z | name '(' integer ')' | p<i> | d<i> | w<i> | '(' expr ')'
//
// Generator names are psi, psid, phi, phid, w, winv, z, f and eps.  The short
// forms p<i>, d<i>, w<i> are the tokens used by the printer, so printed
// elements parse back to themselves.  A bare z is the cyclotomic generator of
// the scalar field, as printed inside coefficients; zeta is zeta_{2k}.

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "qcl/algebra.hpp"
#include "qcl/structure.hpp"

namespace qcl::cli {

struct Node {
    enum class Kind { integer, symbol, generator, sum, difference, product, quotient, negate, power, tensor };
    Kind kind;
    std::size_t pos = 0;
    mpz_class value;    // integer literal
    std::string name;   // symbol or generator name
    int index = 0;      // generator index
    long exponent = 0;  // power
    std::vector<std::shared_ptr<const Node>> children;
};
using Expr = std::shared_ptr<const Node>;

Expr parse(const std::string& text);
/// Parses a sum of '@'-separated tensor terms.
Expr parse_tensor(const std::string& text);

Element evaluate(const Expr& e, const ContextPtr& ctx);
TensorElement evaluate_tensor(const Expr& e, const ContextPtr& factor, int m);

inline Element parse_element(const std::string& text, const ContextPtr& ctx) { return evaluate(parse(text), ctx); }

/// Canonical text; parse_element(print_canonical(x)) == x.
std::string print_canonical(const Element& x);

/// Runs one command line (without the program name); returns the exit status.
/// 0 success, 1 a check or predicate failed, 2 usage or input error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcl::cli
