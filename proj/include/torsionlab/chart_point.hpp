#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace torsionlab {

inline constexpr int kDim = 4;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Chart coordinates (theta, phi, x, y) on S^2 x T^2. Axis indices follow this order.
class ChartPoint {
 public:
  ChartPoint(double theta, double phi, double x, double y) : coords_{theta, phi, x, y} { validate(); }
  explicit ChartPoint(const std::array<double, kDim>& coords) : coords_(coords) { validate(); }

  double theta() const { return coords_[0]; }
  double phi() const { return coords_[1]; }
  double x() const { return coords_[2]; }
  double y() const { return coords_[3]; }
  double operator[](int axis) const { return coords_.at(static_cast<std::size_t>(axis)); }
  const std::array<double, kDim>& coords() const { return coords_; }

  ChartPoint shifted(int axis, double delta) const {
    auto c = coords_;
    c.at(static_cast<std::size_t>(axis)) += delta;
    return ChartPoint(c);
  }

  std::string to_string() const {
    std::ostringstream os;
    os.precision(6);
    os << "(theta=" << coords_[0] << ", phi=" << coords_[1] << ", x=" << coords_[2] << ", y=" << coords_[3] << ")";
    return os.str();
  }

 private:
  void validate() const {
    for (double c : coords_) {
      if (!std::isfinite(c)) throw std::invalid_argument("chart coordinates must be finite");
    }
    // the sphere chart degenerates at the poles
    if (!(coords_[0] > 0.0 && coords_[0] < kPi)) {
      throw std::invalid_argument("theta must lie strictly inside (0, pi), got " + std::to_string(coords_[0]));
    }
  }

  std::array<double, kDim> coords_;
};

/// Generic interior evaluation point used for single-point reports.
inline ChartPoint default_point() { return ChartPoint(1.0, 1.0, 1.0, 1.0); }

struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  int count = 1;
  bool endpoint = true;  ///< include `max`; periodic axes leave it out

  std::vector<double> samples() const {
    std::vector<double> out;
    if (count <= 0) return out;
    if (count == 1) return {min};
    const double steps = endpoint ? count - 1 : count;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) out.push_back(min + (max - min) * i / steps);
    return out;
  }
};

/// Tensor-product grid over the four chart axes.
struct GridSpec {
  std::array<GridAxis, kDim> axes;

  std::size_t size() const {
    std::size_t n = 1;
    for (const auto& a : axes) n *= static_cast<std::size_t>(a.count > 0 ? a.count : 0);
    return n;
  }

  std::vector<ChartPoint> points() const {
    std::array<std::vector<double>, kDim> s;
    for (int i = 0; i < kDim; ++i) s[i] = axes[i].samples();
    std::vector<ChartPoint> out;
    out.reserve(size());
    for (double t : s[0])
      for (double p : s[1])
        for (double x : s[2])
          for (double y : s[3]) out.emplace_back(t, p, x, y);
    return out;
  }

  std::string describe() const {
    static constexpr const char* names[] = {"theta", "phi", "x", "y"};
    std::ostringstream os;
    os.precision(6);
    for (int i = 0; i < kDim; ++i) {
      if (i) os << " x ";
      os << names[i] << "[" << axes[i].min << ", " << axes[i].max << (axes[i].endpoint ? "]" : ")") << "#"
         << axes[i].count;
    }
    return os.str();
  }
};

/// theta clipped to [0.1, pi - 0.1] (5 samples), phi over [0, 2pi) (4), x and y over [0, 2pi) (3 each).
inline GridSpec default_grid() {
  GridSpec g;
  g.axes[0] = {0.1, kPi - 0.1, 5, true};
  g.axes[1] = {0.0, kTwoPi, 4, false};
  g.axes[2] = {0.0, kTwoPi, 3, false};
  g.axes[3] = {0.0, kTwoPi, 3, false};
  return g;
}

}  // namespace torsionlab
