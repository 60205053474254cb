#pragma once

#include <memory>
#include <span>
#include <string>

#include "potkit/rational.hpp"

namespace potkit {

// Polynomial integrand f(w1..wd) with declared growth exponent. Built-ins
// (sqnorm, neg_sqnorm, det2, quadratic(Q)) expand to the same expression tree,
// so evaluation is uniform and exact on rational inputs.
class Integrand {
  public:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;
    struct Node {
        enum class Kind { Const, Var, Add, Sub, Mul, Neg, Pow };
        Kind kind;
        Rational value;  // Const
        int var = 0;     // Var (0-based)
        int power = 0;   // Pow
        NodePtr a, b;
    };

    Integrand() = default;
    Integrand(std::string name, int fiber_dim, NodePtr root);

    const std::string& name() const { return name_; }
    int fiber_dim() const { return fiber_dim_; }
    int growth_exponent() const { return growth_p_; }

    double eval(std::span<const double> w) const;
    Rational eval(std::span<const Rational> w) const;

    // Component extractors used by the moment diagnostics.
    static Integrand component(int fiber_dim, int c);
    static Integrand pair_product(int fiber_dim, int c1, int c2);

  private:
    std::string name_;
    int fiber_dim_ = 0;
    int growth_p_ = 0;
    NodePtr root_;
};

// Expression grammar (documented in the README):
//   expr   := term (('+'|'-') term)*
//   term   := unary ('*' unary)*
//   unary  := '-' unary | postfix
//   postfix:= atom ('^' integer)*
//   atom   := number | 'w'k | builtin | '(' expr ')'
// numbers are integers, fractions p/q, or decimals; builtins are sqnorm,
// neg_sqnorm, det2 (fiber dim 4, row-major), quadratic([[..],..]).
Integrand parse_integrand(const std::string& text, int fiber_dim);

}  // namespace potkit
