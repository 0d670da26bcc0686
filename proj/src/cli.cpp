#include "qcl/cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include "qcl/qgroup.hpp"
#include "qcl/repr.hpp"

namespace qcl::cli {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
    enum class Type { end, integer, ident, plus, minus, star, slash, caret, lparen, rparen, at };
    Type type;
    std::size_t pos;
    std::string text;
    int index = -1;  // trailing digits of a shorthand token such as p12
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        const char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            out.push_back({Token::Type::integer, start, s.substr(start, i - start)});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < s.size() && (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
            Token t{Token::Type::ident, start, s.substr(start, i - start)};
            if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                const std::size_t digits = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (i - digits > 4) throw ParseError(digits, "index too long");
                t.index = std::stoi(s.substr(digits, i - digits));
            }
            out.push_back(std::move(t));
            continue;
        }
        Token::Type type;
        switch (c) {
            case '+': type = Token::Type::plus; break;
            case '-': type = Token::Type::minus; break;
            case '*': type = Token::Type::star; break;
            case '/': type = Token::Type::slash; break;
            case '^': type = Token::Type::caret; break;
            case '(': type = Token::Type::lparen; break;
            case ')': type = Token::Type::rparen; break;
            case '@': type = Token::Type::at; break;
            default: throw ParseError(i, std::string("unexpected character '") + c + "'");
        }
        out.push_back({type, start, std::string(1, c)});
        ++i;
    }
    out.push_back({Token::Type::end, s.size(), ""});
    return out;
}

// ---------------------------------------------------------------------------
// Parser

const std::vector<std::string>& generator_names() {
    static const std::vector<std::string> names = {"psi", "psid", "phi", "phid", "w", "winv", "z", "f", "eps"};
    return names;
}

bool is_generator_name(const std::string& s) {
    for (const auto& n : generator_names()) {
        if (n == s) return true;
    }
    return false;
}

std::shared_ptr<Node> make(Node::Kind kind, std::size_t pos) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->pos = pos;
    return n;
}

class Parser {
   public:
    explicit Parser(const std::string& text) : tokens_(lex(text)) {}

    Expr whole(bool tensor) {
        Expr e = tensor ? tensor_sum() : sum();
        if (peek().type != Token::Type::end) fail("unexpected '" + peek().text + "'");
        return e;
    }

   private:
    const Token& peek() const { return tokens_[i_]; }
    const Token& next() { return tokens_[i_++]; }
    bool accept(Token::Type t) {
        if (peek().type != t) return false;
        ++i_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(peek().pos, msg); }
    void expect(Token::Type t, const char* what) {
        if (!accept(t)) fail(std::string("expected ") + what);
    }

    Expr binary(Node::Kind kind, std::size_t pos, Expr lhs, Expr rhs) {
        auto n = make(kind, pos);
        n->children = {std::move(lhs), std::move(rhs)};
        return n;
    }

    Expr tensor_sum() {
        Expr lhs = tensor_term();
        while (peek().type == Token::Type::plus || peek().type == Token::Type::minus) {
            const Token& op = next();
            Expr rhs = tensor_term();
            lhs = binary(op.type == Token::Type::plus ? Node::Kind::sum : Node::Kind::difference, op.pos, lhs, rhs);
        }
        return lhs;
    }

    Expr tensor_term() {
        const std::size_t pos = peek().pos;
        auto n = make(Node::Kind::tensor, pos);
        n->children.push_back(sum());
        while (accept(Token::Type::at)) n->children.push_back(sum());
        return n;
    }

    Expr sum() {
        Expr lhs = term();
        while (peek().type == Token::Type::plus || peek().type == Token::Type::minus) {
            // Inside a tensor term, + and - separate tensor terms instead.
            if (in_tensor_factor_ && depth_ == 0) break;
            const Token& op = next();
            Expr rhs = term();
            lhs = binary(op.type == Token::Type::plus ? Node::Kind::sum : Node::Kind::difference, op.pos, lhs, rhs);
        }
        return lhs;
    }

    Expr term() {
        Expr lhs = unary();
        while (peek().type == Token::Type::star || peek().type == Token::Type::slash) {
            const Token& op = next();
            Expr rhs = unary();
            lhs = binary(op.type == Token::Type::star ? Node::Kind::product : Node::Kind::quotient, op.pos, lhs, rhs);
        }
        return lhs;
    }

    Expr unary() {
        if (peek().type == Token::Type::minus) {
            const std::size_t pos = next().pos;
            auto n = make(Node::Kind::negate, pos);
            n->children.push_back(unary());
            return n;
        }
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (peek().type != Token::Type::caret) return base;
        const std::size_t pos = next().pos;
        const bool negative = accept(Token::Type::minus);
        if (peek().type != Token::Type::integer) fail("expected an integer exponent");
        const Token& t = next();
        if (t.text.size() > 9) throw ParseError(t.pos, "exponent too large");
        auto n = make(Node::Kind::power, pos);
        n->exponent = std::stol(t.text) * (negative ? -1 : 1);
        n->children.push_back(base);
        return n;
    }

    Expr atom() {
        const Token& t = peek();
        switch (t.type) {
            case Token::Type::integer: {
                next();
                auto n = make(Node::Kind::integer, t.pos);
                n->value = mpz_class(t.text);
                return n;
            }
            case Token::Type::lparen: {
                next();
                ++depth_;
                Expr inner = sum();
                --depth_;
                expect(Token::Type::rparen, "')'");
                return inner;
            }
            case Token::Type::ident: return identifier();
            default: fail(t.type == Token::Type::end ? "unexpected end of input" : "unexpected '" + t.text + "'");
        }
    }

    Expr identifier() {
        const Token& t = next();
        if (t.index >= 0) {
            if (t.text != "p" && t.text != "d" && t.text != "w") throw ParseError(t.pos, "unknown token " + t.text);
            auto n = make(Node::Kind::generator, t.pos);
            n->name = t.text;
            n->index = t.index;
            return n;
        }
        if (peek().type == Token::Type::lparen && is_generator_name(t.text)) {
            next();
            if (peek().type != Token::Type::integer) fail("expected a generator index");
            const Token& idx = next();
            if (idx.text.size() > 4) throw ParseError(idx.pos, "index too large");
            expect(Token::Type::rparen, "')'");
            auto n = make(Node::Kind::generator, t.pos);
            n->name = t.text;
            n->index = std::stoi(idx.text);
            return n;
        }
        if (t.text == "q" || t.text == "s" || t.text == "zeta" || t.text == "z") {
            auto n = make(Node::Kind::symbol, t.pos);
            n->name = t.text;
            return n;
        }
        if (is_generator_name(t.text)) throw ParseError(peek().pos, "expected '(' after " + t.text);
        throw ParseError(t.pos, "unknown name " + t.text);
    }

    std::vector<Token> tokens_;
    std::size_t i_ = 0;
    int depth_ = 0;
    bool in_tensor_factor_ = false;

    friend Expr qcl::cli::parse_tensor(const std::string&);
};

// ---------------------------------------------------------------------------
// Evaluation

std::string at(const Node& n) { return " (at " + std::to_string(n.pos) + ")"; }

Element generator_value(const Node& n, const ContextPtr& ctx) {
    const bool psi = ctx->convention() == Convention::psi;
    const int i = n.index;
    const std::string& name = n.name;
    try {
        if (name == "z") return central_generator(ctx, i);
        if (name == "f") return volume_element(ctx, i);
        if (name == "eps") return standardized_coordinate(ctx, i);
        if (i < 1 || i > ctx->n()) {
            throw DomainError("index " + std::to_string(i) + " out of range [1, " + std::to_string(ctx->n()) + "]");
        }
        if (name == "p") return generator(ctx, psi ? Gen::psi : Gen::phi, i);
        if (name == "d") return generator(ctx, psi ? Gen::psid : Gen::phid, i);
        if (name == "w") return generator(ctx, Gen::w, i);
        if (name == "winv") return generator(ctx, Gen::winv, i);
        if (name == "psi") return generator(ctx, Gen::psi, i);
        if (name == "psid") return generator(ctx, Gen::psid, i);
        if (name == "phi") return generator(ctx, Gen::phi, i);
        if (name == "phid") return generator(ctx, Gen::phid, i);
    } catch (const DomainError& e) {
        throw DomainError(name + "(" + std::to_string(i) + "): " + e.what() + at(n));
    }
    throw DomainError("unknown generator " + name + at(n));
}

Scalar symbol_value(const Node& n, const ContextPtr& ctx) {
    if (n.name == "q") return ctx->q();
    if (n.name == "zeta") return ctx->zeta(1);
    if (n.name == "z") return Scalar::zeta(ctx->conductor(), 1);
    if (ctx->q_spec().kind != QSpec::Kind::sqrt_formal) {
        throw DomainError("s is only defined when q = s^2" + at(n));
    }
    return ctx->variable();
}

Scalar scalar_of(const Element& x, const Node& n) {
    if (!x.is_scalar()) throw DomainError("expected a scalar" + at(n));
    return x.constant_term();
}

Element eval(const Node& n, const ContextPtr& ctx) {
    switch (n.kind) {
        case Node::Kind::integer: return Element::scalar(ctx, Scalar(mpq_class(n.value)));
        case Node::Kind::symbol: return Element::scalar(ctx, symbol_value(n, ctx));
        case Node::Kind::generator: return generator_value(n, ctx);
        case Node::Kind::sum: return eval(*n.children[0], ctx) + eval(*n.children[1], ctx);
        case Node::Kind::difference: return eval(*n.children[0], ctx) - eval(*n.children[1], ctx);
        case Node::Kind::product: return eval(*n.children[0], ctx) * eval(*n.children[1], ctx);
        case Node::Kind::negate: return -eval(*n.children[0], ctx);
        case Node::Kind::quotient: {
            const Scalar d = scalar_of(eval(*n.children[1], ctx), *n.children[1]);
            if (d.is_zero()) throw DomainError("division by zero" + at(n));
            return eval(*n.children[0], ctx) * d.inverse();
        }
        case Node::Kind::power: {
            const Node& base = *n.children[0];
            if (n.exponent >= 0) {
                if (n.exponent > 4096) throw DomainError("exponent too large" + at(n));
                return eval(base, ctx).pow(n.exponent);
            }
            if (base.kind == Node::Kind::generator && base.name == "w") {
                generator_value(base, ctx);  // index check
                return omega_power(ctx, base.index, n.exponent);
            }
            const Element b = eval(base, ctx);
            if (!b.is_scalar()) throw DomainError("negative powers need a scalar or w(i)" + at(n));
            const Scalar c = b.constant_term();
            if (c.is_zero()) throw DomainError("division by zero" + at(n));
            return Element::scalar(ctx, c.pow(n.exponent));
        }
        case Node::Kind::tensor:
            if (n.children.size() == 1) return eval(*n.children[0], ctx);
            throw DomainError("tensor products are only allowed in gamma" + at(n));
    }
    throw DomainError("malformed expression");
}

TensorElement eval_tensor(const Node& n, const ContextPtr& factor, int m) {
    switch (n.kind) {
        case Node::Kind::sum: return eval_tensor(*n.children[0], factor, m) + eval_tensor(*n.children[1], factor, m);
        case Node::Kind::difference: {
            TensorElement rhs = eval_tensor(*n.children[1], factor, m);
            rhs *= Scalar(-1);
            return eval_tensor(*n.children[0], factor, m) + rhs;
        }
        case Node::Kind::tensor: {
            if (static_cast<int>(n.children.size()) != m) {
                throw DomainError("expected " + std::to_string(m) + " tensor factors, got " +
                                  std::to_string(n.children.size()) + at(n));
            }
            std::vector<Element> parts;
            for (const auto& c : n.children) parts.push_back(eval(*c, factor));
            return TensorElement::pure(parts);
        }
        default: throw DomainError("expected a tensor term" + at(n));
    }
}

}  // namespace

Expr parse(const std::string& text) { return Parser(text).whole(false); }

Expr parse_tensor(const std::string& text) {
    Parser p(text);
    p.in_tensor_factor_ = true;
    return p.whole(true);
}

Element evaluate(const Expr& e, const ContextPtr& ctx) { return eval(*e, ctx); }

TensorElement evaluate_tensor(const Expr& e, const ContextPtr& factor, int m) { return eval_tensor(*e, factor, m); }

std::string print_canonical(const Element& x) { return x.to_string(); }

// ---------------------------------------------------------------------------
// Commands

namespace {

using nlohmann::json;

struct Options {
    int n = 1;
    std::string k = "1";
    std::string gens = "psi";
    std::string q = "formal";
    std::string format = "text";
};

int parse_twice_k(const std::string& text) {
    const auto slash = text.find('/');
    try {
        std::size_t used = 0;
        if (slash == std::string::npos) {
            const int k = std::stoi(text, &used);
            if (used != text.size() || k < 1) throw DomainError("");
            return 2 * k;
        }
        const int num = std::stoi(text.substr(0, slash), &used);
        if (used != slash || text.substr(slash + 1) != "2" || num < 1) throw DomainError("");
        return num;
    } catch (const std::logic_error&) {
    } catch (const DomainError&) {
    }
    throw DomainError("--k expects a positive integer or p/2, got '" + text + "'");
}

QSpec parse_q(const std::string& text) {
    if (text == "formal") return QSpec::formal();
    if (text == "sqrt") return QSpec::sqrt_formal();
    mpq_class v;
    if (v.set_str(text, 10) != 0) throw DomainError("--q expects formal, sqrt or a rational, got '" + text + "'");
    v.canonicalize();
    if (v == 0) throw DomainError("q must be nonzero");
    return QSpec::numeric(v);
}

ContextPtr make_context(const Options& o, std::optional<QSpec> override_q = std::nullopt) {
    Convention conv;
    if (o.gens == "psi") {
        conv = Convention::psi;
    } else if (o.gens == "phi") {
        conv = Convention::phi;
    } else {
        throw DomainError("--gens expects psi or phi");
    }
    return AlgebraContext::create(o.n, parse_twice_k(o.k), conv, override_q ? *override_q : parse_q(o.q));
}

json context_json(const AlgebraContext& ctx) {
    const int k2 = ctx.twice_k();
    std::string q;
    switch (ctx.q_spec().kind) {
        case QSpec::Kind::formal: q = "formal"; break;
        case QSpec::Kind::sqrt_formal: q = "s^2"; break;
        case QSpec::Kind::numeric: q = ctx.q_spec().value.get_str(); break;
    }
    return {{"n", ctx.n()},
            {"k_num", k2 % 2 ? k2 : k2 / 2},
            {"k_den", k2 % 2 ? 2 : 1},
            {"gens", ctx.convention() == Convention::psi ? "psi" : "phi"},
            {"q", q}};
}

json element_json(const Element& x) {
    const AlgebraContext& ctx = *x.context();
    json terms = json::array();
    for (const auto& [m, c] : x.terms()) {
        json p = json::array(), d = json::array(), v = json::array();
        for (int a = 0; a < ctx.n(); ++a) {
            p.push_back(m.p_at(a));
            d.push_back(m.d_at(a));
            v.push_back(m.v[a]);
        }
        terms.push_back({{"monomial", monomial_to_string(ctx, m)}, {"p", p}, {"d", d}, {"v", v},
                         {"coeff", c.to_string(ctx.var_name())}});
    }
    return {{"text", x.to_string()}, {"terms", terms}};
}

std::vector<std::string> fock_order(int n) {
    std::vector<std::string> out;
    for (uint32_t l = 0; l < (1U << n); ++l) out.push_back(FockVector::basis(n, l).to_string());
    return out;
}

json matrix_json(const Matrix& m, int n, const std::string& var) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string(var));
        rows.push_back(row);
    }
    return {{"order", fock_order(n)}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

std::string label_text(const std::vector<int>& p) {
    std::string s = "(";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
    return s + ")";
}

std::string join(const std::vector<std::string>& parts) {
    std::string s;
    for (const auto& p : parts) s += (s.empty() ? "" : " ") + p;
    return s;
}

std::vector<std::string> split_semicolon(const std::string& text) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == ';') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

RepLabel parse_label(const std::string& text, int n) {
    RepLabel p;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) return;
        try {
            std::size_t used = 0;
            p.push_back(std::stoi(cur, &used));
            if (used != cur.size()) throw std::invalid_argument(cur);
        } catch (const std::logic_error&) {
            throw DomainError("--p expects integers, got '" + cur + "'");
        }
        cur.clear();
    };
    for (char c : text) {
        if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else {
            cur += c;
        }
    }
    flush();
    if (p.empty()) p.assign(n, 0);
    if (static_cast<int>(p.size()) != n) {
        throw DomainError("--p needs " + std::to_string(n) + " entries, got " + std::to_string(p.size()));
    }
    return p;
}

struct Output {
    const Options& opts;
    std::ostream& out;
    json context;

    bool as_json() const { return opts.format == "json"; }
    void emit(const json& result, const std::string& text) {
        if (as_json()) {
            out << json{{"context", context}, {"result", result}}.dump(2) << "\n";
        } else {
            out << text;
            if (!text.empty() && text.back() != '\n') out << "\n";
        }
    }
};

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact arithmetic in the quantized Clifford algebra Cl_q(n,k)", "qclifford"};
    app.set_help_all_flag("--help-all");
    Options opts;
    app.add_option("--n", opts.n, "rank n")->check(CLI::Range(1, kMaxRank));
    app.add_option("--k", opts.k, "twist k: an integer or p/2");
    app.add_option("--gens", opts.gens, "generator presentation")->check(CLI::IsMember({"psi", "phi"}));
    app.add_option("--q", opts.q, "formal, sqrt (q = s^2) or a rational value");
    app.add_option("--format", opts.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.require_subcommand(1);

    std::vector<std::string> words;
    std::string family, kind, label;
    int m = 2;
    bool check = false;
    auto positional = [&](CLI::App* sub, const char* what) {
        sub->add_option("expr", words, what)->required();
        sub->fallthrough();
    };
    auto* nf = app.add_subcommand("nf", "normal form of an expression");
    positional(nf, "expression");
    auto* commutes = app.add_subcommand("commutes", "whether two elements commute: <e1> ; <e2>");
    positional(commutes, "two expressions separated by ';'");
    auto* central = app.add_subcommand("central", "whether an element is central");
    positional(central, "expression");
    auto* center = app.add_subcommand("center-basis", "basis of the center from the centralizer solve");
    center->fallthrough();
    auto* dim = app.add_subcommand("dim", "number of basis monomials");
    dim->fallthrough();
    auto* rep = app.add_subcommand("rep", "matrix of an element in the spinor representation pi_p");
    rep->add_option("--p", label, "label p, comma separated (default 0)");
    positional(rep, "expression");
    auto* semisimple = app.add_subcommand("semisimple", "semisimplicity certificate");
    semisimple->fallthrough();
    auto* gamma_cmd = app.add_subcommand("gamma", "image of a tensor under Gamma");
    gamma_cmd->add_option("--m", m, "number of tensor factors")->check(CLI::Range(1, kMaxRank));
    positional(gamma_cmd, "tensor expression with factors separated by '@'");
    auto* takeuchi_cmd = app.add_subcommand("takeuchi", "components of the Takeuchi splitting");
    positional(takeuchi_cmd, "expression");
    auto* qgroup = app.add_subcommand("qgroup", "quantum group images");
    qgroup->add_option("family", family, "A, B or D")->required()->check(CLI::IsMember({"A", "B", "D"}));
    qgroup->add_flag("--check", check, "verify the defining relations");
    qgroup->fallthrough();
    auto* involution = app.add_subcommand("involution", "apply an (anti-)involution");
    std::vector<std::string> kinds;
    for (Involution i : all_involutions()) kinds.push_back(involution_name(i));
    involution->add_option("kind", kind, "involution name")->required()->check(CLI::IsMember(kinds));
    positional(involution, "expression");

    // An expression such as "-q*p1" must not be read as a short option.
    static const std::regex option(R"(--[a-z-]+(=.*)?|-h|--)");
    std::vector<std::string> reversed;
    for (auto it = args.rbegin(); it != args.rend(); ++it) {
        const bool shield = it->size() > 1 && (*it)[0] == '-' && !std::regex_match(*it, option);
        reversed.push_back(shield ? " " + *it : *it);
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const bool is_qgroup_b = qgroup->parsed() && family == "B";
        ContextPtr ctx = make_context(opts, is_qgroup_b && opts.q == "formal" ? std::optional(QSpec::sqrt_formal())
                                                                              : std::nullopt);
        Output o{opts, out, context_json(*ctx)};
        const std::string text = join(words);

        if (nf->parsed()) {
            const Element x = parse_element(text, ctx);
            o.emit(element_json(x), print_canonical(x));
            return 0;
        }
        if (commutes->parsed()) {
            const auto parts = split_semicolon(text);
            if (parts.size() != 2) throw DomainError("commutes expects two expressions separated by ';'");
            const Element x = parse_element(parts[0], ctx), y = parse_element(parts[1], ctx);
            const Element c = bracket(x, y, 1);
            o.emit({{"commutes", c.is_zero()}, {"commutator", element_json(c)}}, c.is_zero() ? "true" : "false");
            return c.is_zero() ? 0 : 1;
        }
        if (central->parsed()) {
            const bool yes = is_central(parse_element(text, ctx));
            o.emit({{"central", yes}}, yes ? "true" : "false");
            return yes ? 0 : 1;
        }
        if (center->parsed()) {
            const auto basis = center_basis(ctx);
            json list = json::array();
            std::string t = "dimension " + std::to_string(basis.size()) + "\n";
            for (const Element& b : basis) {
                list.push_back(element_json(b));
                t += print_canonical(b) + "\n";
            }
            o.emit({{"dimension", basis.size()}, {"basis", list}}, t);
            return 0;
        }
        if (dim->parsed()) {
            const std::size_t d = enumerate_basis(*ctx).size();
            o.emit({{"dimension", d}}, std::to_string(d));
            return 0;
        }
        if (rep->parsed()) {
            const RepLabel p = parse_label(label, ctx->n());
            const Matrix mat = rep_matrix(p, parse_element(text, ctx));
            std::string t = "order: " + join(fock_order(ctx->n())) + "\n";
            for (std::size_t i = 0; i < mat.rows(); ++i) {
                t += "[";
                for (std::size_t j = 0; j < mat.cols(); ++j) t += (j ? ", " : "") + mat(i, j).to_string(ctx->var_name());
                t += "]\n";
            }
            json r = matrix_json(mat, ctx->n(), ctx->var_name());
            r["p"] = p;
            o.emit(r, t);
            return 0;
        }
        if (semisimple->parsed()) {
            const SemisimpleReport r = semisimple_certificate(ctx);
            json labels = json::array();
            std::string t = "rank " + std::to_string(r.rank) + " expected " + std::to_string(r.expected) + "\n";
            for (std::size_t i = 0; i < r.labels.size(); ++i) {
                labels.push_back(r.labels[i]);
                t += "p=" + label_text(r.labels[i]) + (r.irreducible[i] ? " irreducible" : " reducible") + "\n";
            }
            t += r.ok() ? "semisimple: certified" : "semisimple: NOT certified";
            o.emit({{"n", r.n},
                    {"k", r.k},
                    {"labels", labels},
                    {"rank", r.rank},
                    {"expected", r.expected},
                    {"irreducible_flags", r.irreducible},
                    {"pass", r.ok()}},
                   t);
            return r.ok() ? 0 : 1;
        }
        if (gamma_cmd->parsed()) {
            const TensorElement t = evaluate_tensor(parse_tensor(text), ctx, m);
            const Element x = gamma(t);
            json r = element_json(x);
            r["tensor"] = t.to_string();
            o.emit(r, print_canonical(x));
            return 0;
        }
        if (takeuchi_cmd->parsed()) {
            const auto parts = takeuchi(parse_element(text, ctx));
            const auto labels = takeuchi_labels(*ctx);
            json list = json::array();
            std::string t;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                list.push_back({{"label", labels[i]}, {"component", element_json(parts[i])}});
                t += label_text(labels[i]) + ": " + print_canonical(parts[i]) + "\n";
            }
            o.emit({{"components", list}}, t);
            return 0;
        }
        if (qgroup->parsed()) {
            const CartanFamily f = family == "A" ? CartanFamily::A : family == "B" ? CartanFamily::B : CartanFamily::D;
            const ThetaImage img = theta_image(ctx, f);
            if (!check) {
                json list = json::array();
                std::string t;
                for (int i = 0; i < img.datum.rank; ++i) {
                    const std::string s = std::to_string(i + 1);
                    list.push_back({{"E", element_json(img.E[i])}, {"F", element_json(img.F[i])},
                                    {"K", element_json(img.K[i])}, {"Kinv", element_json(img.Kinv[i])}});
                    t += "E" + s + " = " + img.E[i].to_string() + "\n" + "F" + s + " = " + img.F[i].to_string() +
                         "\n" + "K" + s + " = " + img.K[i].to_string() + "\n";
                }
                o.emit({{"family", family}, {"images", list}}, t);
                return 0;
            }
            json list = json::array();
            std::string t;
            std::size_t passed = 0, total = 0;
            for (const RelationCheck& c : check_uqgk_relations(img)) {
                ++total;
                passed += c.pass();
                list.push_back({{"relation_id", c.id},
                               {"lhs_text", c.id.substr(0, c.id.find(" = "))},
                               {"residual_text", c.residual.to_string()},
                               {"pass", c.pass()}});
                t += (c.pass() ? "PASS " : "FAIL ") + c.id + (c.pass() ? "" : ": " + c.residual.to_string()) + "\n";
            }
            for (const auto& [id, ok] : degree_bookkeeping(img)) {
                ++total;
                passed += ok;
                list.push_back({{"relation_id", id}, {"lhs_text", id}, {"residual_text", ok ? "0" : "mismatch"}, {"pass", ok}});
                t += (ok ? "PASS " : "FAIL ") + id + "\n";
            }
            t += std::to_string(passed) + "/" + std::to_string(total) + " checks pass";
            o.emit({{"family", family}, {"checks", list}, {"passed", passed}, {"total", total}}, t);
            return passed == total ? 0 : 1;
        }
        if (involution->parsed()) {
            const Element x = apply_involution(*involution_from_name(kind), parse_element(text, ctx));
            o.emit(element_json(x), print_canonical(x));
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace qcl::cli
