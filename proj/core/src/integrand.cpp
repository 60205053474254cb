#include "potkit/integrand.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "potkit/errors.hpp"

namespace potkit {

namespace {

using Node = Integrand::Node;
using NodePtr = Integrand::NodePtr;

NodePtr make_const(Rational v) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Const;
    n->value = std::move(v);
    return n;
}
NodePtr make_var(int i) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Var;
    n->var = i;
    return n;
}
NodePtr make_binary(Node::Kind k, NodePtr a, NodePtr b) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}
NodePtr make_neg(NodePtr a) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Neg;
    n->a = std::move(a);
    return n;
}
NodePtr make_pow(NodePtr a, int p) {
    auto n = std::make_shared<Node>();
    n->kind = Node::Kind::Pow;
    n->a = std::move(a);
    n->power = p;
    return n;
}

int degree_of(const NodePtr& n) {
    switch (n->kind) {
        case Node::Kind::Const: return 0;
        case Node::Kind::Var: return 1;
        case Node::Kind::Add:
        case Node::Kind::Sub: return std::max(degree_of(n->a), degree_of(n->b));
        case Node::Kind::Mul: return degree_of(n->a) + degree_of(n->b);
        case Node::Kind::Neg: return degree_of(n->a);
        case Node::Kind::Pow: return degree_of(n->a) * n->power;
    }
    return 0;
}

template <typename T>
T eval_node(const Node& n, std::span<const T> w) {
    switch (n.kind) {
        case Node::Kind::Const: {
            if constexpr (std::is_same_v<T, double>) return n.value.get_d();
            else return n.value;
        }
        case Node::Kind::Var: return w[static_cast<std::size_t>(n.var)];
        case Node::Kind::Add: return eval_node(*n.a, w) + eval_node(*n.b, w);
        case Node::Kind::Sub: return eval_node(*n.a, w) - eval_node(*n.b, w);
        case Node::Kind::Mul: return eval_node(*n.a, w) * eval_node(*n.b, w);
        case Node::Kind::Neg: return -eval_node(*n.a, w);
        case Node::Kind::Pow: {
            T base = eval_node(*n.a, w);
            T acc = base;
            for (int i = 1; i < n.power; ++i) acc = acc * base;
            return acc;
        }
    }
    if constexpr (std::is_same_v<T, double>) return 0.0;
    else return T(0);
}

NodePtr sqnorm_tree(int d) {
    NodePtr acc = make_pow(make_var(0), 2);
    for (int i = 1; i < d; ++i)
        acc = make_binary(Node::Kind::Add, acc, make_pow(make_var(i), 2));
    return acc;
}

NodePtr det2_tree() {
    // row-major fiber (w1,w2,w3,w4) |-> w1*w4 - w2*w3
    return make_binary(Node::Kind::Sub,
                       make_binary(Node::Kind::Mul, make_var(0), make_var(3)),
                       make_binary(Node::Kind::Mul, make_var(1), make_var(2)));
}

NodePtr quadratic_tree(const std::vector<std::vector<Rational>>& q) {
    const int d = static_cast<int>(q.size());
    NodePtr acc;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == 0) continue;
            NodePtr term = make_binary(
                Node::Kind::Mul,
                make_const(q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]),
                make_binary(Node::Kind::Mul, make_var(i), make_var(j)));
            acc = acc ? make_binary(Node::Kind::Add, acc, term) : term;
        }
    return acc ? acc : make_const(Rational(0));
}

class Parser {
  public:
    Parser(const std::string& text, int fiber_dim) : text_(text), d_(fiber_dim) {}

    NodePtr run() {
        skip_ws();
        NodePtr root = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected trailing input");
        return root;
    }

  private:
    [[noreturn]] void fail(const std::string& what, std::size_t at = std::string::npos) {
        throw ParseError(what, at == std::string::npos ? pos_ : at);
    }
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr acc = term();
        while (true) {
            if (eat('+')) acc = make_binary(Node::Kind::Add, acc, term());
            else if (eat('-')) acc = make_binary(Node::Kind::Sub, acc, term());
            else return acc;
        }
    }

    NodePtr term() {
        NodePtr acc = unary();
        while (eat('*')) acc = make_binary(Node::Kind::Mul, acc, unary());
        return acc;
    }

    NodePtr unary() {
        if (eat('-')) return make_neg(unary());
        return postfix();
    }

    NodePtr postfix() {
        NodePtr base = atom();
        while (eat('^')) {
            skip_ws();
            const std::size_t at = pos_;
            long p = integer();
            if (p < 0) fail("negative exponent", at);
            base = make_pow(std::move(base), static_cast<int>(p));
        }
        return base;
    }

    long integer() {
        skip_ws();
        const std::size_t start = pos_;
        bool neg = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected integer", start);
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            v = v * 10 + (text_[pos_++] - '0');
        return neg ? -v : v;
    }

    Rational number() {
        skip_ws();
        const std::size_t start = pos_;
        std::string digits;
        bool neg = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            neg = true;
            ++pos_;
        }
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            digits += text_[pos_++];
        if (digits.empty()) fail("expected number", start);
        Rational value(digits);
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::string den;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                den += text_[pos_++];
            if (den.empty()) fail("expected denominator");
            value = Rational(digits + "/" + den);
            value.canonicalize();
        } else if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            std::string frac;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                frac += text_[pos_++];
            if (frac.empty()) fail("expected decimal digits");
            Rational scale = pow_rational(Rational(1, 10), static_cast<unsigned>(frac.size()));
            value = Rational(digits) + Rational(frac) * scale;
        }
        return neg ? Rational(-value) : value;
    }

    std::string identifier() {
        skip_ws();
        std::string id;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            id += text_[pos_++];
        return id;
    }

    std::vector<std::vector<Rational>> matrix_literal() {
        const std::size_t open = pos_;
        if (!eat('[')) fail("expected matrix literal");
        std::vector<std::vector<Rational>> rows;
        do {
            if (!eat('[')) fail("expected matrix row", open);
            std::vector<Rational> row;
            do {
                row.push_back(number());
            } while (eat(','));
            if (!eat(']')) fail("unterminated matrix row", open);
            rows.push_back(std::move(row));
        } while (eat(','));
        if (!eat(']')) fail("unterminated matrix literal", open);
        for (const auto& r : rows)
            if (r.size() != rows.size()) fail("quadratic matrix must be square", open);
        return rows;
    }

    NodePtr atom() {
        skip_ws();
        if (pos_ >= text_.size()) fail("expected operand");
        const char c = text_[pos_];
        if (c == '(') {
            const std::size_t open = pos_;
            ++pos_;
            NodePtr inner;
            try {
                inner = expr();
            } catch (const ParseError& e) {
                // errors at end of input blame the unterminated group itself
                if (e.offset >= text_.size()) fail("unterminated group", open);
                throw;
            }
            if (!eat(')')) fail("unterminated group", open);
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return make_const(number());
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            const std::size_t start = pos_;
            std::string id = identifier();
            if (id.size() >= 2 && id[0] == 'w' &&
                std::all_of(id.begin() + 1, id.end(),
                            [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                const int k = std::stoi(id.substr(1));
                if (k < 1 || k > d_) fail("fiber component out of range: " + id, start);
                return make_var(k - 1);
            }
            if (id == "sqnorm") return sqnorm_tree(d_);
            if (id == "neg_sqnorm") return make_neg(sqnorm_tree(d_));
            if (id == "det2") {
                if (d_ != 4) fail("det2 requires a 4-component fiber", start);
                return det2_tree();
            }
            if (id == "quadratic") {
                if (!eat('(')) fail("quadratic expects a matrix argument", start);
                auto q = matrix_literal();
                if (static_cast<int>(q.size()) != d_)
                    fail("quadratic matrix must be " + std::to_string(d_) + "x" +
                             std::to_string(d_),
                         start);
                if (!eat(')')) fail("unterminated quadratic argument", start);
                return quadratic_tree(q);
            }
            fail("unknown identifier: " + id, start);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& text_;
    int d_;
    std::size_t pos_ = 0;
};

}  // namespace

Integrand::Integrand(std::string name, int fiber_dim, NodePtr root)
    : name_(std::move(name)), fiber_dim_(fiber_dim), root_(std::move(root)) {
    growth_p_ = root_ ? degree_of(root_) : 0;
}

double Integrand::eval(std::span<const double> w) const {
    if (static_cast<int>(w.size()) != fiber_dim_)
        throw DimensionMismatch("integrand fiber dimension mismatch");
    return eval_node<double>(*root_, w);
}

Rational Integrand::eval(std::span<const Rational> w) const {
    if (static_cast<int>(w.size()) != fiber_dim_)
        throw DimensionMismatch("integrand fiber dimension mismatch");
    return eval_node<Rational>(*root_, w);
}

Integrand Integrand::component(int fiber_dim, int c) {
    return Integrand("w" + std::to_string(c + 1), fiber_dim, make_var(c));
}

Integrand Integrand::pair_product(int fiber_dim, int c1, int c2) {
    return Integrand("w" + std::to_string(c1 + 1) + "*w" + std::to_string(c2 + 1), fiber_dim,
                     make_binary(Node::Kind::Mul, make_var(c1), make_var(c2)));
}

Integrand parse_integrand(const std::string& text, int fiber_dim) {
    Parser parser(text, fiber_dim);
    return Integrand(text, fiber_dim, parser.run());
}

}  // namespace potkit
