#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "expr_gen.hpp"
#include "qcl/cli.hpp"

using namespace qcl;
using namespace qcl::cli;

namespace {

struct Run {
    int status;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int status = run_command(args, out, err);
    return {status, out.str(), err.str()};
}

std::string golden(const std::string& name) {
    std::ifstream in(std::string(QCL_GOLDEN_DIR) + "/" + name);
    REQUIRE_MESSAGE(in.good(), "missing golden file " << name);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ContextPtr psi(int n, int k) { return AlgebraContext::create(n, 2 * k); }

}  // namespace

TEST_CASE("parser examples") {
    auto c = psi(1, 1);
    const Element winv = omega_power(c, 1, -1);
    CHECK(parse_element("psi(1)*psid(1) + q^1*psid(1)*psi(1)", c) == winv);
    CHECK(parse_element("z(1)^2", c) == Element::scalar(c, 1));
    CHECK(parse_element("w1^-1", c) == winv);
    CHECK(parse_element("winv(1)", c) == winv);
    CHECK(print_canonical(parse_element("psid(1)*psi(1)", c)) == "q*w1 - q*p1*d1");
    CHECK(print_canonical(Element(c)) == "0");
    CHECK(print_canonical(Element::scalar(c, 1)) == "1");

    // Precedence: ^ binds tighter than unary minus and *, which bind tighter than +.
    CHECK(parse_element("-q^2", c) == Element::scalar(c, -(c->q() * c->q())));
    CHECK(parse_element("1 + 2*3^2", c) == Element::scalar(c, 19));
    CHECK(parse_element("8/2/2", c) == Element::scalar(c, 2));
    CHECK(parse_element("p1/(q - 1)", c) == generator(c, Gen::psi, 1) * (c->q() - Scalar(1)).inverse());

    auto two = psi(2, 1);
    CHECK_THROWS_AS(parse_element("psi(3)", two), DomainError);
    CHECK(parse_element("eps(4)", two) == standardized_coordinate(two, 4));
}

TEST_CASE("parse errors carry positions") {
    auto c = psi(1, 1);
    auto position = [&](const std::string& text) -> long {
        try {
            parse_element(text, c);
        } catch (const ParseError& e) {
            return static_cast<long>(e.position());
        }
        return -1;
    };
    CHECK(position("p1 * ") == 5);
    CHECK(position("p1 $ d1") == 3);
    CHECK(position("(p1 + d1") == 8);
    CHECK(position("psi 1") == 4);
    CHECK(position("foo") == 0);
    CHECK(position("x7") == 0);
    CHECK(position("q^p1") == 2);
    CHECK(position("p1 d1") == 3);
}

TEST_CASE("evaluation errors") {
    auto c = psi(1, 1);
    CHECK_THROWS_AS(parse_element("p1/d1", c), DomainError);
    CHECK_THROWS_AS(parse_element("p1/0", c), DomainError);
    CHECK_THROWS_AS(parse_element("p1^-1", c), DomainError);
    CHECK_THROWS_AS(parse_element("s", c), DomainError);
    CHECK_THROWS_AS(parse_element("p1 @ w1", c), ParseError);
    auto half = AlgebraContext::create(1, 1, Convention::phi);
    CHECK_THROWS_AS(parse_element("winv(1)", half), DomainError);
    CHECK_NOTHROW(parse_element("w1^-1", half));
    auto sq = AlgebraContext::create(1, 2, Convention::psi, QSpec::sqrt_formal());
    CHECK(parse_element("s^2", sq) == Element::scalar(sq, sq->q()));
}

TEST_CASE("round trip on a random corpus") {
    const std::vector<ContextPtr> contexts = {
        psi(1, 1),
        psi(2, 1),
        psi(1, 2),
        AlgebraContext::create(2, 1, Convention::phi),
        AlgebraContext::create(1, 3, Convention::phi),
        AlgebraContext::create(2, 2, Convention::psi, QSpec::numeric(mpq_class(2, 3))),
        AlgebraContext::create(1, 2, Convention::psi, QSpec::sqrt_formal()),
    };
    std::mt19937 rng(2024);
    int nonzero = 0;
    for (int i = 0; i < 500; ++i) {
        const ContextPtr& ctx = contexts[i % contexts.size()];
        const std::string text = qcl::testing::ExprGen(ctx, rng).expr(2);
        INFO(text);
        const Element x = parse_element(text, ctx);
        const std::string printed = print_canonical(x);
        INFO(printed);
        const Element y = parse_element(printed, ctx);
        CHECK(y == x);
        CHECK(print_canonical(y) == printed);
        nonzero += !x.is_zero();
    }
    CHECK(nonzero > 400);
}

TEST_CASE("tensor expressions") {
    auto c = psi(1, 1);
    const Expr e = parse_tensor("p1 @ w1 - (q + 1)*d1 @ 1 + 2 @ p1*d1");
    const TensorElement t = evaluate_tensor(e, c, 2);
    const TensorElement back = evaluate_tensor(parse_tensor(t.to_string()), c, 2);
    CHECK(back == t);
    CHECK(evaluate_tensor(parse_tensor("q*p1 @ w1"), c, 2).to_string() == "q*p1 @ w1");
    CHECK_THROWS_AS(evaluate_tensor(parse_tensor("p1 @ w1 @ d1"), c, 2), DomainError);
    CHECK(gamma(t) == gamma(back));
}

TEST_CASE("golden outputs") {
    CHECK(run({"--n", "1", "--k", "1", "nf", "psid(1)*psi(1)"}).out == golden("nf_psid_psi.txt"));
    CHECK(run({"--n", "1", "--k", "1", "rep", "--p", "0", "w(1)"}).out == golden("rep_w1.txt"));
    const Run a = run({"--n", "2", "--k", "1", "qgroup", "A", "--check"});
    CHECK(a.status == 0);
    CHECK(a.out == golden("qgroup_A_n2.txt"));
    CHECK(run({"--n", "2", "--k", "1", "qgroup", "D", "--check"}).out == golden("qgroup_D_n2.txt"));
    CHECK(run({"--n", "2", "--k", "1", "qgroup", "B", "--check"}).out == golden("qgroup_B_n2.txt"));

    CHECK(run({"--n", "1", "--k", "1", "--format", "json", "nf", "psid(1)*psi(1)"}).out ==
          golden("nf_psid_psi.json"));
    CHECK(run({"--n", "1", "--k", "1", "--format", "json", "rep", "--p", "0", "w(1)"}).out == golden("rep_w1.json"));
    CHECK(run({"--n", "2", "--k", "1", "--format", "json", "qgroup", "A", "--check"}).out ==
          golden("qgroup_A_n2.json"));
}

TEST_CASE("json schema") {
    const auto j = nlohmann::json::parse(run({"--n", "2", "--k", "3/2", "--gens", "phi", "--format", "json", "nf", "p1"}).out);
    CHECK(j["context"] == nlohmann::json{{"n", 2}, {"k_num", 3}, {"k_den", 2}, {"gens", "phi"}, {"q", "formal"}});
    CHECK(j["result"]["text"] == "p1");
    CHECK(j["result"]["terms"][0]["p"] == nlohmann::json{1, 0});
    const auto q = nlohmann::json::parse(run({"--n", "1", "--q", "3/4", "--format", "json", "dim"}).out);
    CHECK(q["context"]["q"] == "3/4");
    CHECK(q["result"]["dimension"] == 8);
}

TEST_CASE("commands and exit status") {
    CHECK(run({"--n", "2", "dim"}).out == "64\n");
    CHECK(run({"--n", "2", "--k", "1/2", "--gens", "phi", "dim"}).out == "16\n");
    CHECK(run({"--n", "1", "nf", "-q*p1"}).out == "-q*p1\n");
    CHECK(run({"--n", "2", "commutes", "p1*d1", ";", "w2"}).status == 0);
    const Run no = run({"--n", "2", "commutes", "p1 ; d1"});
    CHECK(no.status == 1);
    CHECK(no.out == "false\n");
    CHECK(run({"--n", "1", "central", "z(1)"}).status == 0);
    CHECK(run({"--n", "1", "central", "p1"}).status == 1);
    CHECK(run({"--n", "1", "center-basis"}).out.rfind("dimension 2\n", 0) == 0);
    CHECK(run({"--n", "1", "rep", "--p", "1", "p1 + d1"}).out == "order: v(0) v(1)\n[0, -1]\n[1, 0]\n");
    CHECK(run({"--n", "1", "semisimple"}).status == 0);
    CHECK(run({"--n", "1", "gamma", "--m", "2", "p1 @ 1"}).out == "p1\n");
    CHECK(run({"--n", "1", "takeuchi", "p1"}).out == "(0): p1\n(1): -p1\n");
    CHECK(run({"--n", "1", "involution", "dagger", "p1"}).out == "d1\n");

    CHECK(run({"--n", "1", "nf", "p2"}).status == 2);
    CHECK(run({"--n", "1", "nf", "p1 +"}).status == 2);
    CHECK(run({"--n", "1", "frobnicate"}).status == 2);
    CHECK(run({"--n", "1", "--bogus", "dim"}).status == 2);
    CHECK(run({"--n", "1", "--k", "0.5", "dim"}).status == 2);
    CHECK(run({"--n", "1", "--k", "1/2", "dim"}).status == 2);
    CHECK(run({"--n", "1", "qgroup", "A", "--check"}).status == 2);
    CHECK(run({"--n", "1", "involution", "nonsense", "p1"}).status == 2);
    CHECK(run({"--help"}).status == 0);
}
