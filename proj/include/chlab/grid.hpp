#pragma once

#include <cstddef>
#include <vector>

namespace chlab {

/// Uniform periodic discretization of the truncated line [-L, L).
///
/// Node m sits at x_m = -L + m*dx with dx = 2L/N. Mode index j in
/// {-N/2, ..., N/2-1} carries the wavenumber k_j = j*pi/L.
class Grid {
 public:
  Grid(double half_length, std::size_t n_points);

  double half_length() const { return half_length_; }
  std::size_t size() const { return n_; }
  double dx() const { return dx_; }

  double node(std::size_t m) const;
  /// Node in extended precision; carrier phases lambda * x_m reach 1e6 and lose
  /// ~1e-10 absolute when formed from the rounded double node.
  long double node_extended(std::size_t m) const;
  std::vector<double> nodes() const;

  /// Wavenumber of the r2c bin j in [0, N/2].
  double wavenumber(std::size_t j) const;
  /// Largest resolvable |k| = (N/2) * pi / L.
  double k_max() const;
  /// Number of bins in a real-to-complex spectrum, N/2 + 1.
  std::size_t spectrum_size() const { return n_ / 2 + 1; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.half_length_ == b.half_length_ && a.n_ == b.n_;
  }

 private:
  double half_length_;
  std::size_t n_;
  double dx_;
};

/// Validated constructor: throws InvalidArgument on odd N or L <= 0.
Grid make_grid(double half_length, std::size_t n_points);

/// True if n factors entirely into 2, 3 and 5.
bool is_smooth_size(std::size_t n);

/// Smallest even 5-smooth integer >= n.
std::size_t next_smooth_size(std::size_t n);

}  // namespace chlab
