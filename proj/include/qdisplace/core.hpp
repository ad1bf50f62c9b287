// Copyright 2026 The qdisplace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense complex linear algebra over small mixed-radix registers.
//
// A register is an ordered list of labeled subsystems with dimension 2 or 4.
// Indexing is big-endian mixed radix: the leftmost subsystem is the most
// significant digit. Kets are immutable values; every operation returns a
// fresh Ket, so protocol traces can hold intermediates without aliasing.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qdisplace {

using Complex = std::complex<double>;

inline constexpr double kOrthoTol = 1e-12;     // orthonormality / unitarity
inline constexpr double kPhaseTol = 1e-10;     // fidelity-up-to-phase gate
inline constexpr double kZeroBranchTol = 1e-15;
inline constexpr int kMaxTotalDim = 1024;

// Conditioning on a measurement branch of (near-)zero probability.
class ZeroBranchError : public std::runtime_error {
 public:
  explicit ZeroBranchError(const std::string& what) : std::runtime_error(what) {}
};

// A channel that does not admit a unitary correction (not maximally entangled).
class DegenerateChannelError : public std::runtime_error {
 public:
  explicit DegenerateChannelError(const std::string& what) : std::runtime_error(what) {}
};

struct Subsystem {
  std::string label;
  int dim = 0;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

// Ordered list of labeled subsystems. Dimensions are restricted to {2,4} and
// the total dimension is capped at 1024; everything in scope fits with margin.
class RegisterShape {
 public:
  RegisterShape() = default;

  explicit RegisterShape(std::vector<Subsystem> subsystems)
      : subs_(std::move(subsystems)) {
    long total = 1;
    for (const auto& s : subs_) {
      if (s.dim != 2 && s.dim != 4) {
        throw std::invalid_argument("RegisterShape: subsystem dim must be 2 or 4");
      }
      if (s.label.empty()) {
        throw std::invalid_argument("RegisterShape: empty label");
      }
      total *= s.dim;
      if (total > kMaxTotalDim) {
        throw std::invalid_argument("RegisterShape: total dimension exceeds 1024");
      }
    }
    for (std::size_t i = 0; i < subs_.size(); ++i) {
      for (std::size_t j = i + 1; j < subs_.size(); ++j) {
        if (subs_[i].label == subs_[j].label) {
          throw std::invalid_argument("RegisterShape: duplicate label '" +
                                      subs_[i].label + "'");
        }
      }
    }
  }

  std::size_t subsystem_count() const { return subs_.size(); }
  const Subsystem& at(std::size_t i) const { return subs_.at(i); }
  const std::vector<Subsystem>& subsystems() const { return subs_; }

  int total_dim() const {
    int t = 1;
    for (const auto& s : subs_) t *= s.dim;
    return t;
  }

  std::vector<int> dims() const {
    std::vector<int> d;
    d.reserve(subs_.size());
    for (const auto& s : subs_) d.push_back(s.dim);
    return d;
  }

  std::vector<std::string> labels() const {
    std::vector<std::string> l;
    l.reserve(subs_.size());
    for (const auto& s : subs_) l.push_back(s.label);
    return l;
  }

  bool has_label(std::string_view label) const {
    return std::any_of(subs_.begin(), subs_.end(),
                       [&](const Subsystem& s) { return s.label == label; });
  }

  std::size_t index_of(std::string_view label) const {
    for (std::size_t i = 0; i < subs_.size(); ++i) {
      if (subs_[i].label == label) return i;
    }
    throw std::invalid_argument("RegisterShape: no subsystem labeled '" +
                                std::string(label) + "'");
  }

  bool same_dims(const RegisterShape& other) const {
    return dims() == other.dims();
  }

  friend bool operator==(const RegisterShape&, const RegisterShape&) = default;

 private:
  std::vector<Subsystem> subs_;
};

inline RegisterShape make_shape(
    std::initializer_list<std::pair<std::string_view, int>> subs) {
  std::vector<Subsystem> v;
  v.reserve(subs.size());
  for (const auto& [label, dim] : subs) v.push_back({std::string(label), dim});
  return RegisterShape(std::move(v));
}

// Dense state vector over a labeled register.
class Ket {
 public:
  Ket(RegisterShape shape, std::vector<Complex> amplitudes)
      : shape_(std::move(shape)), amps_(std::move(amplitudes)) {
    if (static_cast<int>(amps_.size()) != shape_.total_dim()) {
      throw std::invalid_argument("Ket: amplitude count does not match shape");
    }
    for (const Complex& a : amps_) {
      if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
        throw std::invalid_argument("Ket: non-finite amplitude");
      }
    }
  }

  // Computational basis state |values> (one value per subsystem).
  static Ket basis(RegisterShape shape, const std::vector<int>& values) {
    if (values.size() != shape.subsystem_count()) {
      throw std::invalid_argument("Ket::basis: value count mismatch");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const int d = shape.at(i).dim;
      if (values[i] < 0 || values[i] >= d) {
        throw std::invalid_argument("Ket::basis: value out of range");
      }
      idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(values[i]);
    }
    std::vector<Complex> amps(static_cast<std::size_t>(shape.total_dim()), Complex{0, 0});
    amps[idx] = Complex{1, 0};
    return Ket(std::move(shape), std::move(amps));
  }

  const RegisterShape& shape() const { return shape_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }
  int dim() const { return static_cast<int>(amps_.size()); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const {
    double n = 0.0;
    for (const Complex& a : amps_) n += std::norm(a);
    return n;
  }
  double norm() const { return std::sqrt(norm_squared()); }

  Ket normalized() const {
    const double n = norm();
    if (n <= kZeroBranchTol) {
      throw ZeroBranchError("Ket::normalized: vector has (near-)zero norm");
    }
    std::vector<Complex> out(amps_);
    for (Complex& a : out) a /= n;
    return Ket(shape_, std::move(out));
  }

  Ket scaled(Complex factor) const {
    std::vector<Complex> out(amps_);
    for (Complex& a : out) a *= factor;
    return Ket(shape_, std::move(out));
  }

  // Same amplitudes on a register with new labels (dims must agree).
  Ket relabeled(const std::vector<std::string>& labels) const {
    if (labels.size() != shape_.subsystem_count()) {
      throw std::invalid_argument("Ket::relabeled: label count mismatch");
    }
    std::vector<Subsystem> subs;
    subs.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
      subs.push_back({labels[i], shape_.at(i).dim});
    }
    return Ket(RegisterShape(std::move(subs)), amps_);
  }

  friend bool operator==(const Ket&, const Ket&) = default;

 private:
  RegisterShape shape_;
  std::vector<Complex> amps_;
};

// <a|b>, conjugate-linear in the first argument. Labels are ignored; the
// dimension lists must agree.
inline Complex inner_product(const Ket& a, const Ket& b) {
  if (!a.shape().same_dims(b.shape())) {
    throw std::invalid_argument("inner_product: register dims differ");
  }
  Complex acc{0, 0};
  for (int i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

// |<a|b>|^2. Global phase drops out; equals 1 iff a = e^{i t} b.
inline double fidelity_up_to_phase(const Ket& a, const Ket& b) {
  return std::norm(inner_product(a, b));
}

inline Ket tensor_product(const Ket& a, const Ket& b) {
  std::vector<Subsystem> subs = a.shape().subsystems();
  for (const auto& s : b.shape().subsystems()) subs.push_back(s);
  RegisterShape shape(std::move(subs));  // throws on duplicate labels
  std::vector<Complex> amps;
  amps.reserve(static_cast<std::size_t>(a.dim()) * static_cast<std::size_t>(b.dim()));
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < b.dim(); ++j) amps.push_back(a[i] * b[j]);
  }
  return Ket(std::move(shape), std::move(amps));
}

namespace detail {

inline std::vector<std::size_t> strides_of(const std::vector<int>& dims) {
  std::vector<std::size_t> strides(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) {
    strides[i - 1] = strides[i] * static_cast<std::size_t>(dims[i]);
  }
  return strides;
}

}  // namespace detail

// Reindex amplitudes so subsystems appear in the order given by `perm`
// (a permutation of the existing labels). Physical amplitudes are preserved
// exactly: for every assignment of subsystem values the output amplitude is
// bitwise the input amplitude.
inline Ket permute_subsystems(const Ket& k, const std::vector<std::string>& perm) {
  const RegisterShape& shape = k.shape();
  const std::size_t n = shape.subsystem_count();
  if (perm.size() != n) {
    throw std::invalid_argument("permute_subsystems: not a permutation (size)");
  }
  std::vector<std::size_t> source(n);  // new position -> old position
  std::vector<bool> used(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = shape.index_of(perm[i]);
    if (used[j]) {
      throw std::invalid_argument("permute_subsystems: repeated label '" + perm[i] + "'");
    }
    used[j] = true;
    source[i] = j;
  }

  std::vector<Subsystem> new_subs(n);
  for (std::size_t i = 0; i < n; ++i) new_subs[i] = shape.at(source[i]);
  RegisterShape new_shape(std::move(new_subs));

  const std::vector<int> old_dims = shape.dims();
  const std::vector<std::size_t> old_strides = detail::strides_of(old_dims);
  const std::vector<int> new_dims = new_shape.dims();

  std::vector<Complex> out(k.amplitudes().size());
  std::vector<int> digits(n, 0);
  for (std::size_t new_idx = 0; new_idx < out.size(); ++new_idx) {
    std::size_t old_idx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      old_idx += static_cast<std::size_t>(digits[i]) * old_strides[source[i]];
    }
    out[new_idx] = k[old_idx];
    for (std::size_t i = n; i-- > 0;) {  // increment mixed-radix counter
      if (++digits[i] < new_dims[i]) break;
      digits[i] = 0;
    }
  }
  return Ket(std::move(new_shape), std::move(out));
}

namespace detail {

// Partial inner product <probe| k, contracting the probe's subsystems.
// Returns the unnormalized residual on the remaining subsystems (in their
// original order) together with its squared norm.
inline std::pair<double, Ket> project_component(const Ket& k, const Ket& probe) {
  const auto& targets = probe.shape();
  std::vector<std::string> order = targets.labels();
  std::vector<Subsystem> rest;
  for (const auto& s : k.shape().subsystems()) {
    if (!targets.has_label(s.label)) {
      rest.push_back(s);
      order.push_back(s.label);
    }
  }
  if (order.size() != k.shape().subsystem_count()) {
    throw std::invalid_argument("project_measure: probe labels not a subset of register");
  }
  for (std::size_t i = 0; i < targets.subsystem_count(); ++i) {
    if (k.shape().at(k.shape().index_of(targets.at(i).label)).dim != targets.at(i).dim) {
      throw std::invalid_argument("project_measure: probe subsystem dim mismatch");
    }
  }
  const Ket permuted = permute_subsystems(k, order);
  const int probe_dim = probe.dim();
  const int rest_dim = permuted.dim() / probe_dim;
  std::vector<Complex> residual(static_cast<std::size_t>(rest_dim), Complex{0, 0});
  for (int i = 0; i < probe_dim; ++i) {
    const Complex w = std::conj(probe[i]);
    if (w == Complex{0, 0}) continue;
    const std::size_t base = static_cast<std::size_t>(i) * static_cast<std::size_t>(rest_dim);
    for (int j = 0; j < rest_dim; ++j) {
      residual[static_cast<std::size_t>(j)] += w * permuted[base + static_cast<std::size_t>(j)];
    }
  }
  double p = 0.0;
  for (const Complex& a : residual) p += std::norm(a);
  if (rest.empty()) {
    // Full projection: keep a trivial one-subsystem stand-in? Not needed in
    // scope; every measurement in scope leaves at least one subsystem.
    throw std::invalid_argument("project_measure: probe covers the whole register");
  }
  return {p, Ket(RegisterShape(std::move(rest)), std::move(residual))};
}

}  // namespace detail

// Projective measurement of the probe state on its labeled subsystems.
// Returns the branch probability and the renormalized conditional state on
// the complement (complement subsystems keep their original order). The
// conditional keeps the phase produced by raw projection.
inline std::pair<double, Ket> project_measure(const Ket& k, const Ket& probe) {
  const double pn = probe.norm_squared();
  if (std::abs(pn - 1.0) > 1e-9) {
    throw std::invalid_argument("project_measure: probe is not unit norm");
  }
  auto [p, residual] = detail::project_component(k, probe);
  if (p <= kZeroBranchTol) {
    throw ZeroBranchError("project_measure: branch probability is (near) zero");
  }
  const double inv = 1.0 / std::sqrt(p);
  std::vector<Complex> amps = residual.amplitudes();
  for (Complex& a : amps) a *= inv;
  return {p, Ket(residual.shape(), std::move(amps))};
}

// Square complex matrix with unitarity enforced at construction.
class UnitaryMatrix {
 public:
  UnitaryMatrix(int dim, std::vector<Complex> entries)
      : dim_(dim), entries_(std::move(entries)) {
    if (dim_ <= 0 || entries_.size() != static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_)) {
      throw std::invalid_argument("UnitaryMatrix: bad dimensions");
    }
    // U U^dagger = I within 1e-12 entrywise.
    for (int r = 0; r < dim_; ++r) {
      for (int c = 0; c < dim_; ++c) {
        Complex acc{0, 0};
        for (int m = 0; m < dim_; ++m) acc += at(r, m) * std::conj(at(c, m));
        const Complex want = (r == c) ? Complex{1, 0} : Complex{0, 0};
        if (std::abs(acc - want) > kOrthoTol) {
          throw std::invalid_argument("UnitaryMatrix: not unitary within 1e-12");
        }
      }
    }
  }

  static UnitaryMatrix identity(int dim) {
    std::vector<Complex> e(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), Complex{0, 0});
    for (int i = 0; i < dim; ++i) e[static_cast<std::size_t>(i) * dim + i] = Complex{1, 0};
    return UnitaryMatrix(dim, std::move(e));
  }

  int dim() const { return dim_; }
  const Complex& at(int row, int col) const {
    return entries_[static_cast<std::size_t>(row) * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(col)];
  }
  const std::vector<Complex>& entries() const { return entries_; }

  UnitaryMatrix adjoint() const {
    std::vector<Complex> e(entries_.size());
    for (int r = 0; r < dim_; ++r) {
      for (int c = 0; c < dim_; ++c) {
        e[static_cast<std::size_t>(c) * dim_ + r] = std::conj(at(r, c));
      }
    }
    return UnitaryMatrix(dim_, std::move(e));
  }

  UnitaryMatrix scaled(Complex phase) const {
    if (std::abs(std::abs(phase) - 1.0) > kOrthoTol) {
      throw std::invalid_argument("UnitaryMatrix::scaled: factor must be a phase");
    }
    std::vector<Complex> e(entries_);
    for (Complex& x : e) x *= phase;
    return UnitaryMatrix(dim_, std::move(e));
  }

  friend bool operator==(const UnitaryMatrix&, const UnitaryMatrix&) = default;

 private:
  int dim_;
  std::vector<Complex> entries_;
};

inline double max_abs_diff(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("max_abs_diff: dimension mismatch");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  }
  return m;
}

namespace detail {

// Gauss-Jordan inverse with partial pivoting; used to solve the 4x4 systems
// that map conditional columns back to input columns.
inline std::vector<Complex> invert_matrix(int dim, std::vector<Complex> m) {
  std::vector<Complex> inv(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim), Complex{0, 0});
  for (int i = 0; i < dim; ++i) inv[static_cast<std::size_t>(i) * dim + i] = Complex{1, 0};
  auto a = [&](std::vector<Complex>& mat, int r, int c) -> Complex& {
    return mat[static_cast<std::size_t>(r) * dim + c];
  };
  for (int col = 0; col < dim; ++col) {
    int pivot = col;
    for (int r = col + 1; r < dim; ++r) {
      if (std::abs(a(m, r, col)) > std::abs(a(m, pivot, col))) pivot = r;
    }
    if (std::abs(a(m, pivot, col)) < 1e-12) {
      throw DegenerateChannelError("invert_matrix: singular conditional system");
    }
    if (pivot != col) {
      for (int c = 0; c < dim; ++c) {
        std::swap(a(m, pivot, c), a(m, col, c));
        std::swap(a(inv, pivot, c), a(inv, col, c));
      }
    }
    const Complex d = a(m, col, col);
    for (int c = 0; c < dim; ++c) {
      a(m, col, c) /= d;
      a(inv, col, c) /= d;
    }
    for (int r = 0; r < dim; ++r) {
      if (r == col) continue;
      const Complex f = a(m, r, col);
      if (f == Complex{0, 0}) continue;
      for (int c = 0; c < dim; ++c) {
        a(m, r, c) -= f * a(m, col, c);
        a(inv, r, c) -= f * a(inv, col, c);
      }
    }
  }
  return inv;
}

}  // namespace detail

// Apply U to the ordered target subsystems (product of their dims must equal
// U's dimension); all other subsystems are untouched. Returns a Ket on the
// original register order.
inline Ket apply_unitary(const UnitaryMatrix& u, const Ket& k,
                         const std::vector<std::string>& targets) {
  std::vector<std::string> order = targets;
  int tdim = 1;
  for (const auto& label : targets) {
    tdim *= k.shape().at(k.shape().index_of(label)).dim;
  }
  if (tdim != u.dim()) {
    throw std::invalid_argument("apply_unitary: matrix dim does not match targets");
  }
  for (const auto& s : k.shape().subsystems()) {
    if (std::find(targets.begin(), targets.end(), s.label) == targets.end()) {
      order.push_back(s.label);
    }
  }
  const Ket permuted = permute_subsystems(k, order);
  const int rest_dim = permuted.dim() / tdim;
  std::vector<Complex> out(permuted.amplitudes().size(), Complex{0, 0});
  for (int i = 0; i < tdim; ++i) {
    for (int m = 0; m < tdim; ++m) {
      const Complex w = u.at(i, m);
      if (w == Complex{0, 0}) continue;
      const std::size_t src = static_cast<std::size_t>(m) * rest_dim;
      const std::size_t dst = static_cast<std::size_t>(i) * rest_dim;
      for (int j = 0; j < rest_dim; ++j) {
        out[dst + static_cast<std::size_t>(j)] += w * permuted[src + static_cast<std::size_t>(j)];
      }
    }
  }
  const Ket result(permuted.shape(), std::move(out));
  return permute_subsystems(result, k.shape().labels());
}

}  // namespace qdisplace
