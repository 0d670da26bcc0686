// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "expr_gen.hpp"
#include "qcl/classical.hpp"
#include "qcl/cli.hpp"
#include "qcl/linalg.hpp"
#include "qcl/qgroup.hpp"
#include "qcl/repr.hpp"
#include "qcl/structure.hpp"

using namespace qcl;

namespace {

/// Tallies sub-checks and remembers the first few failures.
class Tally {
   public:
    void check(bool ok, const std::string& what) {
        ++total_;
        if (ok) return;
        ++failed_;
        if (notes_.size() < 4) notes_.push_back(what);
    }
    bool pass() const { return failed_ == 0 && total_ > 0; }
    std::string summary(const std::string& extra = "") const {
        std::string s = std::to_string(total_ - failed_) + "/" + std::to_string(total_) + " checks";
        if (!extra.empty()) s += ", " + extra;
        for (const auto& n : notes_) s += "; failed: " + n;
        return s;
    }

   private:
    std::size_t total_ = 0, failed_ = 0;
    std::vector<std::string> notes_;
};

struct Outcome {
    bool pass;
    std::string detail;
};

ContextPtr psi(int n, int k) { return AlgebraContext::create(n, 2 * k); }

std::string tag(const AlgebraContext& c) { return "n=" + std::to_string(c.n()) + " k=" + c.k_string(); }

Element mono(const ContextPtr& c, const Monomial& m) { return Element::monomial(c, m); }

bool closed(const Element& x) {
    for (const auto& [m, c] : x.terms()) {
        if (!monomial_valid(*x.context(), m)) return false;
    }
    return true;
}

Outcome dimension() {
    Tally t;
    std::vector<ContextPtr> ctxs;
    for (int n = 1; n <= 3; ++n) {
        for (int k = 1; k <= 2; ++k) ctxs.push_back(psi(n, k));
        ctxs.push_back(AlgebraContext::create(n, 1, Convention::phi));
    }
    for (const auto& c : ctxs) {
        const auto basis = enumerate_basis(*c);
        const std::size_t expected = c->integer_k() ? static_cast<std::size_t>(std::pow(8 * c->k(), c->n()))
                                                    : static_cast<std::size_t>(1) << (2 * c->n());
        t.check(basis.size() == expected, "count " + tag(*c));
        std::vector<Element> els;
        for (const Monomial& m : basis) els.push_back(mono(c, m));
        const std::string label = "closure " + tag(*c);
        for (const Element& x : els)
            for (const Element& y : els) t.check(closed(x * y), label);
    }
    return {t.pass(), t.summary("closure on all basis pairs")};
}

Outcome relations() {
    Tally t;
    std::vector<ContextPtr> ctxs;
    for (int n = 1; n <= 3; ++n) {
        for (int k = 1; k <= 2; ++k) ctxs.push_back(psi(n, k));
        for (int k2 : {1, 3}) ctxs.push_back(AlgebraContext::create(n, k2, Convention::phi));
        ctxs.push_back(AlgebraContext::create(n, 4, Convention::phi));
    }
    for (const auto& c : ctxs) {
        for (const auto& r : defining_relations(c)) t.check(r.residual.is_zero(), r.name + " " + tag(*c));
    }
    return {t.pass(), t.summary()};
}

Outcome associativity() {
    Tally t;
    std::mt19937 rng(3);
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k) {
            auto c = psi(n, k);
            const auto basis = enumerate_basis(*c);
            std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
            for (int i = 0; i < 1000; ++i) {
                const Element x = mono(c, basis[pick(rng)]), y = mono(c, basis[pick(rng)]),
                              z = mono(c, basis[pick(rng)]);
                t.check((x * y) * z == x * (y * z), "triple " + tag(*c));
            }
        }
    return {t.pass(), t.summary("1000 triples per (n,k)")};
}

Outcome center() {
    Tally t;
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k) {
            auto c = psi(n, k);
            const CenterReport r = center_report(c);
            t.check(r.ok(), "dimension " + std::to_string(r.dimension) + " vs " + std::to_string(r.expected) + " " +
                                tag(*c));
            const Element one = Element::scalar(c, 1);
            for (int a = 1; a <= n; ++a) {
                const Element z = central_generator(c, a);
                const Element p = generator(c, Gen::psi, a), d = generator(c, Gen::psid, a);
                t.check(z.pow(2 * k) == one, "z^2k " + tag(*c));
                t.check(z.pow(k) == p * d + d * p, "z^k " + tag(*c));
            }
        }
    return {t.pass(), t.summary()};
}

Outcome volume_gamma() {
    Tally t;
    std::mt19937 rng(5);
    auto random_element = [&](const ContextPtr& c, const std::vector<Monomial>& basis) {
        std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
        std::uniform_int_distribution<int> coeff(-3, 3);
        Element x(c);
        for (int i = 0; i < 2; ++i) x.add_term(basis[pick(rng)], Scalar(coeff(rng)) + c->q() * Scalar(coeff(rng)));
        return x;
    };
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k) {
            auto c = psi(n, k);
            const Element one = Element::scalar(c, 1);
            for (int r = 0; r <= n; ++r) {
                const Element f = volume_element(c, r);
                t.check(f * f == one, "f_r^2 " + tag(*c));
                for (int a = 1; a <= n; ++a) {
                    const Scalar sign = a <= r ? -1 : 1;
                    t.check(bracket(f, generator(c, Gen::psi, a), sign).is_zero(), "f psi " + tag(*c));
                    t.check(bracket(f, generator(c, Gen::psid, a), sign).is_zero(), "f psid " + tag(*c));
                    t.check(bracket(f, generator(c, Gen::w, a), 1).is_zero(), "f w " + tag(*c));
                }
            }
            auto big = psi(2 * n, k);
            for (const Element& g : algebra_generators(big)) t.check(gamma(gamma_inverse(g, n, 2)) == g, "round trip");
            for (const Element& g : algebra_generators(c)) {
                for (int slot = 0; slot < 2; ++slot) {
                    std::vector<Element> parts{one, one};
                    parts[slot] = g;
                    const TensorElement x = TensorElement::pure(parts);
                    t.check(gamma_inverse(gamma(x), n, 2) == x, "inverse round trip " + tag(*c));
                }
            }
            const auto basis = enumerate_basis(*c);
            for (int i = 0; i < 50; ++i) {
                const TensorElement x = TensorElement::pure({random_element(c, basis), random_element(c, basis)});
                const TensorElement y = TensorElement::pure({random_element(c, basis), random_element(c, basis)});
                t.check(gamma(x * y) == gamma(x) * gamma(y), "multiplicative " + tag(*c));
            }
        }
    return {t.pass(), t.summary("200 random tensor pairs")};
}

Outcome representations() {
    Tally t;
    std::mt19937 rng(11);
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k) {
            auto c = psi(n, k);
            const auto basis = enumerate_basis(*c);
            std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
            const auto labels = rep_labels(*c);
            t.check(labels.size() == static_cast<std::size_t>(std::pow(2 * k, n)), "label count " + tag(*c));
            std::vector<std::vector<Matrix>> z_images;
            for (const RepLabel& p : labels) {
                for (int i = 0; i < 25; ++i) {
                    const Element x = mono(c, basis[pick(rng)]), y = mono(c, basis[pick(rng)]);
                    t.check(rep_matrix(p, x * y) == rep_matrix(p, x) * rep_matrix(p, y), "module " + tag(*c));
                }
                for (const auto& r : psi_relations(rep_images(c, p))) t.check(r.residual.is_zero(), r.name);
                std::vector<Matrix> zs;
                for (int a = 1; a <= n; ++a) {
                    zs.push_back(rep_matrix(p, central_generator(c, a)));
                    t.check(zs.back() == Matrix::identity(1U << n) * c->zeta(p[a - 1]), "z eigenvalue " + tag(*c));
                }
                z_images.push_back(zs);
            }
            for (std::size_t i = 0; i < z_images.size(); ++i)
                for (std::size_t j = i + 1; j < z_images.size(); ++j)
                    t.check(z_images[i] != z_images[j], "distinct " + tag(*c));
        }
    return {t.pass(), t.summary()};
}

Outcome semisimplicity() {
    Tally t;
    std::string ranks;
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k) {
            const SemisimpleReport r = semisimple_certificate(psi(n, k));
            t.check(r.ok(), "certificate n=" + std::to_string(n) + " k=" + std::to_string(k));
            ranks += (ranks.empty() ? "" : " ") + std::to_string(r.rank) + "/" + std::to_string(r.expected);
        }
    return {t.pass(), t.summary("ranks " + ranks)};
}

Outcome quantum_groups() {
    Tally t;
    for (int k = 1; k <= 2; ++k) {
        std::vector<ThetaImage> images;
        for (int n = 2; n <= 3; ++n) {
            images.push_back(theta_image(psi(n, k), CartanFamily::A));
            images.push_back(theta_image(psi(n, k), CartanFamily::D));
        }
        images.push_back(theta_image(AlgebraContext::create(2, 2 * k, Convention::psi, QSpec::sqrt_formal()),
                                     CartanFamily::B));
        for (const ThetaImage& img : images) {
            const std::string where = family_name(img.datum.family) + " " + tag(*img.ctx);
            for (const auto& r : check_uqgk_relations(img)) t.check(r.pass(), r.id + " " + where);
            for (const auto& [id, ok] : degree_bookkeeping(img)) t.check(ok, id + " " + where);
        }
    }
    return {t.pass(), t.summary()};
}

Outcome takeuchi_splitting() {
    Tally t;
    std::string ranks;
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k) {
            auto c = psi(n, k);
            auto cl = classical_context(*c);
            const auto labels = takeuchi_labels(*c);
            for (const auto& label : labels) {
                for (const auto& r : psi_relations(takeuchi_images(c, label))) t.check(r.residual.is_zero(), r.name);
            }
            const auto small = enumerate_basis(*cl);
            std::map<Monomial, std::size_t, MonomialLess> index;
            for (std::size_t i = 0; i < small.size(); ++i) index[small[i]] = i;
            std::vector<SparseVector> columns;
            for (const Monomial& m : enumerate_basis(*c)) {
                const auto parts = takeuchi(mono(c, m));
                SparseVector col;
                for (std::size_t b = 0; b < parts.size(); ++b)
                    for (const auto& [mm, coeff] : parts[b].terms()) col[b * small.size() + index.at(mm)] = coeff;
                columns.push_back(std::move(col));
            }
            const std::size_t r = rank(columns);
            t.check(r == columns.size(), "stacked rank " + tag(*c));
            ranks += (ranks.empty() ? "" : " ") + std::to_string(r) + "/" + std::to_string(columns.size());
            for (std::size_t b = 0; b < labels.size(); ++b)
                for (int a = 1; a <= n; ++a)
                    for (Gen g : {Gen::phi, Gen::phid}) {
                        std::vector<Element> tuple(labels.size(), Element(cl));
                        tuple[b] = generator(cl, g, a);
                        t.check(takeuchi(takeuchi_inverse(tuple, c)) == tuple, "inverse " + tag(*c));
                    }
        }
    return {t.pass(), t.summary("stacked ranks " + ranks)};
}

Outcome classical_degeneration() {
    Tally t;
    for (int n = 1; n <= 3; ++n) {
        auto half = AlgebraContext::create(n, 1, Convention::phi);
        std::vector<std::pair<Element, classical::Combination>> basis;
        for (const Monomial& m : enumerate_basis(*half)) {
            const Element x = mono(half, m);
            basis.emplace_back(x, to_classical(x));
        }
        for (const auto& [x, cx] : basis)
            for (const auto& [y, cy] : basis)
                t.check(to_classical(x * y) == classical::multiply(cx, cy), "product n=" + std::to_string(n));
    }
    return {t.pass(), t.summary("full tables for n <= 3")};
}

Outcome involutions() {
    Tally algebra, induced, transpose_rules;
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k) {
            auto c = psi(n, k);
            std::vector<Involution> kinds;
            for (Involution i : all_involutions())
                if (involution_available(*c, i)) kinds.push_back(i);
            std::vector<Element> basis;
            for (const Monomial& m : enumerate_basis(*c)) basis.push_back(mono(c, m));
            for (Involution kind : kinds) {
                const std::string name = involution_name(kind) + " " + tag(*c);
                std::vector<Element> image;
                for (const Element& x : basis) image.push_back(apply_involution(kind, x));
                for (std::size_t i = 0; i < basis.size(); ++i) {
                    algebra.check(apply_involution(kind, image[i]) == basis[i], "square " + name);
                }
                for (std::size_t i = 0; i < basis.size(); ++i)
                    for (std::size_t j = 0; j < basis.size(); ++j) {
                        const Element lhs = apply_involution(kind, basis[i] * basis[j]);
                        algebra.check(lhs == (is_anti(kind) ? image[j] * image[i] : image[i] * image[j]),
                                      "multiplicative " + name);
                    }
                for (Involution other : kinds) {
                    if (other <= kind) continue;
                    for (const Element& x : basis)
                        algebra.check(apply_involution(kind, apply_involution(other, x)) ==
                                          apply_involution(other, apply_involution(kind, x)),
                                      involution_name(kind) + "/" + involution_name(other) + " commute");
                }
            }
        }
    for (int k = 1; k <= 2; ++k) {
        std::vector<ThetaImage> images{theta_image(psi(2, k), CartanFamily::A), theta_image(psi(3, k), CartanFamily::A),
                                       theta_image(psi(3, k), CartanFamily::D),
                                       theta_image(AlgebraContext::create(2, 2 * k, Convention::psi,
                                                                          QSpec::sqrt_formal()),
                                                   CartanFamily::B)};
        for (const ThetaImage& img : images) {
            const std::string where = family_name(img.datum.family) + " " + tag(*img.ctx);
            for (const auto& r : induced_involution_check(img)) {
                const bool plain_transpose = r.id.rfind("transpose(E", 0) == 0 || r.id.rfind("transpose(F", 0) == 0;
                (plain_transpose ? transpose_rules : induced).check(r.pass(), r.id + " " + where);
            }
        }
    }
    // psi_a and psi_b^* anticommute for a != b, so the plain transpose sends psi_1 psi_2^* to its negative.
    return {algebra.pass() && induced.pass() && transpose_rules.pass(),
            "algebra maps: " + algebra.summary() + " | dagger, duality and K rules: " + induced.summary() +
                " | transpose E^t = E, F^t = F: " + transpose_rules.summary()};
}

std::string read_file(const std::string& name) {
    std::ifstream in(std::string(QCL_GOLDEN_DIR) + "/" + name);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Outcome command_line() {
    Tally t;
    auto golden = [&](const std::vector<std::string>& args, const std::string& file) {
        std::ostringstream out, err;
        const int status = cli::run_command(args, out, err);
        t.check(status == 0 && out.str() == read_file(file), file);
    };
    golden({"--n", "1", "--k", "1", "nf", "psid(1)*psi(1)"}, "nf_psid_psi.txt");
    golden({"--n", "1", "--k", "1", "rep", "--p", "0", "w(1)"}, "rep_w1.txt");
    golden({"--n", "2", "--k", "1", "qgroup", "A", "--check"}, "qgroup_A_n2.txt");
    golden({"--n", "1", "--k", "1", "--format", "json", "nf", "psid(1)*psi(1)"}, "nf_psid_psi.json");
    golden({"--n", "1", "--k", "1", "--format", "json", "rep", "--p", "0", "w(1)"}, "rep_w1.json");
    golden({"--n", "2", "--k", "1", "--format", "json", "qgroup", "A", "--check"}, "qgroup_A_n2.json");

    const std::vector<ContextPtr> ctxs = {psi(1, 1), psi(2, 1), psi(1, 2), AlgebraContext::create(2, 1, Convention::phi),
                                          AlgebraContext::create(1, 3, Convention::phi)};
    std::mt19937 rng(99);
    for (int i = 0; i < 500; ++i) {
        const ContextPtr& c = ctxs[i % ctxs.size()];
        const std::string text = testing::ExprGen(c, rng).expr(2);
        const Element x = cli::parse_element(text, c);
        t.check(cli::parse_element(cli::print_canonical(x), c) == x, "round trip of " + text);
    }
    return {t.pass(), t.summary("6 golden files, 500 random expressions")};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"dimension (8k)^n and 4^n, closure", dimension},
        {"defining relations reduce to zero", relations},
        {"associativity on random triples", associativity},
        {"center dimension (2k)^n and z identities", center},
        {"volume elements and Gamma", volume_gamma},
        {"spinor representations", representations},
        {"semisimplicity certificate", semisimplicity},
        {"quantum group relations and degrees", quantum_groups},
        {"Takeuchi splitting", takeuchi_splitting},
        {"classical degeneration at k=1/2", classical_degeneration},
        {"involutions and induced rules", involutions},
        {"CLI goldens and round trip", command_line},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !o.pass;
        std::printf("%s criterion %2zu: %s (%.1fs) %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    secs, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%zu/%zu criteria pass\n", criteria.size() - failures, criteria.size());
    return failures ? 1 : 0;
}
