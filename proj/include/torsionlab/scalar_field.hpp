#pragma once

#include <array>
#include <memory>
#include <stdexcept>
#include <string>

#include "torsionlab/chart_point.hpp"
#include "torsionlab/dual.hpp"

namespace torsionlab {

/// Differentiable real function of the chart coordinates.
///
/// Stored as an immutable expression DAG. Values and first derivatives are
/// evaluated by forward-mode AD; `partial()` yields another ScalarField whose
/// evaluation nests one more dual level, so fields stay closed under
/// differentiation up to `kMaxDualDepth` nested derivatives.
class ScalarField {
 public:
  static constexpr int kMaxDualDepth = 5;

  ScalarField() : ScalarField(0.0) {}
  ScalarField(double c)  // NOLINT: constants convert implicitly
      : node_(std::make_shared<const Node>(Node{Op::constant, c, -1, nullptr, nullptr, 0u})) {}

  static ScalarField coordinate(int axis) {
    check_axis(axis);
    return ScalarField(Node{Op::coordinate, 0.0, axis, nullptr, nullptr, 1u << axis});
  }

  double value(const ChartPoint& p) const { return evaluate(p.coords()); }

  /// Exact first derivative along chart axis `axis` (0 = theta, 1 = phi, 2 = x, 3 = y).
  double derivative(const ChartPoint& p, int axis) const {
    check_axis(axis);
    std::array<Dual<double>, kDim> x;
    for (int m = 0; m < kDim; ++m) x[m] = Dual<double>(p[m], m == axis ? 1.0 : 0.0);
    return node_->eval(x).tangent;
  }

  std::array<double, kDim> gradient(const ChartPoint& p) const {
    std::array<double, kDim> g{};
    for (int m = 0; m < kDim; ++m) g[m] = (depends_on(m) ? derivative(p, m) : 0.0);
    return g;
  }

  /// The derivative as a field in its own right.
  ScalarField partial(int axis) const {
    check_axis(axis);
    if (!depends_on(axis)) return ScalarField(0.0);
    if (node_->op == Op::coordinate) return ScalarField(1.0);
    return ScalarField(Node{Op::partial, 0.0, axis, node_, nullptr, node_->deps});
  }

  template <class S>
  S evaluate(const std::array<S, kDim>& x) const {
    return node_->eval(x);
  }

  bool is_constant() const { return node_->op == Op::constant; }
  bool is_zero() const { return is_constant() && node_->constant == 0.0; }
  bool depends_on(int axis) const { return (node_->deps >> axis) & 1u; }
  /// Constant value; only meaningful when is_constant().
  double constant_value() const { return node_->constant; }

  friend ScalarField operator+(const ScalarField& f, const ScalarField& g) {
    if (f.is_zero()) return g;
    if (g.is_zero()) return f;
    if (f.is_constant() && g.is_constant()) return f.constant_value() + g.constant_value();
    return binary(Op::add, f, g);
  }
  friend ScalarField operator-(const ScalarField& f, const ScalarField& g) {
    if (g.is_zero()) return f;
    if (f.is_zero()) return -g;
    if (f.is_constant() && g.is_constant()) return f.constant_value() - g.constant_value();
    return binary(Op::sub, f, g);
  }
  friend ScalarField operator*(const ScalarField& f, const ScalarField& g) {
    if (f.is_zero() || g.is_zero()) return 0.0;
    if (f.is_constant() && f.constant_value() == 1.0) return g;
    if (g.is_constant() && g.constant_value() == 1.0) return f;
    if (f.is_constant() && g.is_constant()) return f.constant_value() * g.constant_value();
    return binary(Op::mul, f, g);
  }
  friend ScalarField operator/(const ScalarField& f, const ScalarField& g) {
    if (g.is_zero()) throw std::domain_error("division by the zero field");
    if (f.is_zero()) return 0.0;
    if (g.is_constant() && g.constant_value() == 1.0) return f;
    if (f.is_constant() && g.is_constant()) return f.constant_value() / g.constant_value();
    return binary(Op::div, f, g);
  }
  ScalarField operator-() const {
    if (is_constant()) return -constant_value();
    return unary(Op::neg, *this);
  }
  ScalarField& operator+=(const ScalarField& g) { return *this = *this + g; }
  ScalarField& operator-=(const ScalarField& g) { return *this = *this - g; }
  ScalarField& operator*=(const ScalarField& g) { return *this = *this * g; }

  friend ScalarField sin(const ScalarField& f) { return f.is_constant() ? std::sin(f.constant_value()) : unary(Op::sin, f); }
  friend ScalarField cos(const ScalarField& f) { return f.is_constant() ? std::cos(f.constant_value()) : unary(Op::cos, f); }
  friend ScalarField cot(const ScalarField& f) {
    return f.is_constant() ? torsionlab::cot(f.constant_value()) : unary(Op::cot, f);
  }
  friend ScalarField exp(const ScalarField& f) { return f.is_constant() ? std::exp(f.constant_value()) : unary(Op::exp, f); }
  friend ScalarField log(const ScalarField& f) { return f.is_constant() ? std::log(f.constant_value()) : unary(Op::log, f); }
  friend ScalarField sqrt(const ScalarField& f) {
    return f.is_constant() ? std::sqrt(f.constant_value()) : unary(Op::sqrt, f);
  }

 private:
  enum class Op { constant, coordinate, add, sub, mul, div, neg, sin, cos, cot, exp, log, sqrt, partial };

  struct Node {
    Op op;
    double constant;
    int axis;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    unsigned deps;  // bitmask of chart axes the expression may depend on

    template <class S>
    S eval(const std::array<S, kDim>& x) const {
      switch (op) {
        case Op::constant: return S(constant);
        case Op::coordinate: return x[static_cast<std::size_t>(axis)];
        case Op::add: return lhs->eval(x) + rhs->eval(x);
        case Op::sub: return lhs->eval(x) - rhs->eval(x);
        case Op::mul: return lhs->eval(x) * rhs->eval(x);
        case Op::div: return lhs->eval(x) / rhs->eval(x);
        case Op::neg: return -lhs->eval(x);
        case Op::sin: return sin(lhs->eval(x));
        case Op::cos: return cos(lhs->eval(x));
        case Op::cot: return cot(lhs->eval(x));
        case Op::exp: return exp(lhs->eval(x));
        case Op::log: return log(lhs->eval(x));
        case Op::sqrt: return sqrt(lhs->eval(x));
        case Op::partial:
          if constexpr (dual_depth_v<S> < kMaxDualDepth) {
            std::array<Dual<S>, kDim> xd;
            for (int m = 0; m < kDim; ++m) xd[m] = Dual<S>(x[m], S(m == axis ? 1.0 : 0.0));
            return lhs->eval(xd).tangent;
          } else {
            throw std::domain_error("derivative nesting exceeds the supported depth");
          }
      }
      throw std::logic_error("unknown expression node");
    }
  };

  explicit ScalarField(Node n) : node_(std::make_shared<const Node>(std::move(n))) {}

  static ScalarField binary(Op op, const ScalarField& f, const ScalarField& g) {
    return ScalarField(Node{op, 0.0, -1, f.node_, g.node_, f.node_->deps | g.node_->deps});
  }
  static ScalarField unary(Op op, const ScalarField& f) {
    return ScalarField(Node{op, 0.0, -1, f.node_, nullptr, f.node_->deps});
  }
  static void check_axis(int axis) {
    if (axis < 0 || axis >= kDim) throw std::invalid_argument("chart axis must be in 0..3, got " + std::to_string(axis));
  }

  std::shared_ptr<const Node> node_;
};

inline ScalarField theta_field() { return ScalarField::coordinate(0); }
inline ScalarField phi_field() { return ScalarField::coordinate(1); }
inline ScalarField x_field() { return ScalarField::coordinate(2); }
inline ScalarField y_field() { return ScalarField::coordinate(3); }

}  // namespace torsionlab
