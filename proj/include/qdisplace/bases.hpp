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

// The seven 16-element maximally entangled basis families.
//
// Every family is built the same way: pick an orthonormal quadruple of
// product states (A,B,C,D) per index, then combine with the fixed sign rows
//   W = (A+B+C+D)/2, X = (A+B-C-D)/2, Y = (A-B+C-D)/2, Z = (A-B-C+D)/2.
// The inverse transform has the same coefficients, so it is an involution.
//
// Families differ only in their quadruples:
//   QUQUART_PAIR      [4,4]      member m of index a: |(a+m)%4> |m>
//   FOUR_QUBIT        [2,2,2,2]  XOR-flip structure on (1,2), member bits on (3,4)
//   COUPLED_FLIP_QI   [4,2,2]    ququart fixed per member, qubit pair XOR-flips
//   COUPLED_FLIP_IQ   [2,2,4]    mirror of the above
//   COUPLED_SHIFT_QI  [4,2,2]    QUQUART_PAIR with the second factor through iota
//   COUPLED_SHIFT_IQ  [2,2,4]    QUQUART_PAIR with the first factor through iota
//   FOUR_QUBIT_SHIFT  [2,2,2,2]  both factors through iota, shift structure;
//                                this is the four-qubit basis the swapping
//                                decomposition diagonalizes in.
//
// iota is the index bijection between ququart levels and qubit pairs,
// i = 2r + s. This header owns it; everything else goes through here.

#pragma once

#include <array>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qdisplace/core.hpp"

namespace qdisplace {

// --- iota: ququart level <-> qubit pair --------------------------------------

inline int iota_level(int r, int s) { return 2 * r + s; }
inline std::pair<int, int> iota_bits(int level) { return {(level >> 1) & 1, level & 1}; }

// --- labels -------------------------------------------------------------------

enum class Letter : int { W = 0, X = 1, Y = 2, Z = 3 };

inline char letter_char(Letter l) { return "WXYZ"[static_cast<int>(l)]; }

struct BasisLabel {
  Letter letter = Letter::W;
  int index = 0;  // alpha in {0..3}; equivalently rs with alpha = 2r+s

  int ordinal() const { return 4 * static_cast<int>(letter) + index; }

  std::string name() const {
    std::string s;
    s += letter_char(letter);
    s += '_';
    s += static_cast<char>('0' + index);
    return s;
  }

  static BasisLabel from_ordinal(int ordinal) {
    if (ordinal < 0 || ordinal > 15) {
      throw std::invalid_argument("BasisLabel: ordinal out of range");
    }
    return {static_cast<Letter>(ordinal / 4), ordinal % 4};
  }

  // Parses "W_0" .. "Z_3".
  static std::optional<BasisLabel> parse(std::string_view text) {
    if (text.size() != 3 || text[1] != '_') return std::nullopt;
    const char* letters = "WXYZ";
    const char* pos = std::char_traits<char>::find(letters, 4, text[0]);
    if (pos == nullptr || text[2] < '0' || text[2] > '3') return std::nullopt;
    return BasisLabel{static_cast<Letter>(pos - letters), text[2] - '0'};
  }

  friend bool operator==(const BasisLabel&, const BasisLabel&) = default;
};

// Fixed enumeration order W_0..W_3, X_0..X_3, Y_0..Y_3, Z_0..Z_3; outcome
// sampling and all tables use this order.
inline const std::array<BasisLabel, 16>& all_basis_labels() {
  static const std::array<BasisLabel, 16> labels = [] {
    std::array<BasisLabel, 16> out{};
    for (int i = 0; i < 16; ++i) out[static_cast<std::size_t>(i)] = BasisLabel::from_ordinal(i);
    return out;
  }();
  return labels;
}

// --- families -----------------------------------------------------------------

enum class BasisFamily {
  QuquartPair,
  FourQubit,
  CoupledFlipQI,
  CoupledFlipIQ,
  CoupledShiftQI,
  CoupledShiftIQ,
  FourQubitShift,
};

inline const std::array<BasisFamily, 7>& all_basis_families() {
  static const std::array<BasisFamily, 7> fams = {
      BasisFamily::QuquartPair,    BasisFamily::FourQubit,
      BasisFamily::CoupledFlipQI,  BasisFamily::CoupledFlipIQ,
      BasisFamily::CoupledShiftQI, BasisFamily::CoupledShiftIQ,
      BasisFamily::FourQubitShift,
  };
  return fams;
}

inline std::string_view family_name(BasisFamily f) {
  switch (f) {
    case BasisFamily::QuquartPair: return "QUQUART_PAIR";
    case BasisFamily::FourQubit: return "FOUR_QUBIT";
    case BasisFamily::CoupledFlipQI: return "COUPLED_FLIP_QI";
    case BasisFamily::CoupledFlipIQ: return "COUPLED_FLIP_IQ";
    case BasisFamily::CoupledShiftQI: return "COUPLED_SHIFT_QI";
    case BasisFamily::CoupledShiftIQ: return "COUPLED_SHIFT_IQ";
    case BasisFamily::FourQubitShift: return "FOUR_QUBIT_SHIFT";
  }
  throw std::invalid_argument("family_name: unknown family");
}

inline std::optional<BasisFamily> parse_family(std::string_view name) {
  for (BasisFamily f : all_basis_families()) {
    if (family_name(f) == name) return f;
  }
  return std::nullopt;
}

// Default register labels per family; protocol code relabels as needed.
inline RegisterShape family_shape(BasisFamily f) {
  switch (f) {
    case BasisFamily::QuquartPair:
      return make_shape({{"I", 4}, {"II", 4}});
    case BasisFamily::FourQubit:
    case BasisFamily::FourQubitShift:
      return make_shape({{"1", 2}, {"2", 2}, {"3", 2}, {"4", 2}});
    case BasisFamily::CoupledFlipQI:
    case BasisFamily::CoupledShiftQI:
      return make_shape({{"I", 4}, {"1", 2}, {"2", 2}});
    case BasisFamily::CoupledFlipIQ:
    case BasisFamily::CoupledShiftIQ:
      return make_shape({{"1", 2}, {"2", 2}, {"I", 4}});
  }
  throw std::invalid_argument("family_shape: unknown family");
}

inline RegisterShape family_shape(BasisFamily f, const std::vector<std::string>& labels) {
  RegisterShape def = family_shape(f);
  if (labels.size() != def.subsystem_count()) {
    throw std::invalid_argument("family_shape: label count mismatch");
  }
  std::vector<Subsystem> subs;
  subs.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    subs.push_back({labels[i], def.at(i).dim});
  }
  return RegisterShape(std::move(subs));
}

// Orthonormal product-state quadruple (A,B,C,D) for one family index.
struct NaturalQuadruple {
  std::array<Ket, 4> kets;

  const Ket& a() const { return kets[0]; }
  const Ket& b() const { return kets[1]; }
  const Ket& c() const { return kets[2]; }
  const Ket& d() const { return kets[3]; }
};

namespace detail {

inline std::vector<int> quadruple_values(BasisFamily f, int alpha, int member) {
  const int r = (alpha >> 1) & 1;
  const int s = alpha & 1;
  const auto [mr, ms] = iota_bits(member);
  switch (f) {
    case BasisFamily::QuquartPair:
      return {(alpha + member) % 4, member};
    case BasisFamily::FourQubit:
      switch (member) {
        case 0: return {r, s, 0, 0};
        case 1: return {1 - r, 1 - s, 0, 1};
        case 2: return {1 - r, s, 1, 0};
        default: return {r, 1 - s, 1, 1};
      }
    case BasisFamily::CoupledFlipQI:
      switch (member) {
        case 0: return {0, r, s};
        case 1: return {1, 1 - r, 1 - s};
        case 2: return {2, 1 - r, s};
        default: return {3, r, 1 - s};
      }
    case BasisFamily::CoupledFlipIQ:
      switch (member) {
        case 0: return {r, s, 0};
        case 1: return {1 - r, 1 - s, 1};
        case 2: return {1 - r, s, 2};
        default: return {r, 1 - s, 3};
      }
    case BasisFamily::CoupledShiftQI: {
      return {(alpha + member) % 4, mr, ms};
    }
    case BasisFamily::CoupledShiftIQ: {
      const auto [jr, js] = iota_bits((alpha + member) % 4);
      return {jr, js, member};
    }
    case BasisFamily::FourQubitShift: {
      const auto [jr, js] = iota_bits(((alpha - member) % 4 + 4) % 4);
      const auto [kr, ks] = iota_bits((4 - member) % 4);
      return {jr, js, kr, ks};
    }
  }
  throw std::invalid_argument("quadruple_values: unknown family");
}

}  // namespace detail

inline NaturalQuadruple natural_quadruple(BasisFamily f, int alpha,
                                          const RegisterShape& shape) {
  if (alpha < 0 || alpha > 3) {
    throw std::invalid_argument("natural_quadruple: index must be in 0..3");
  }
  return NaturalQuadruple{{Ket::basis(shape, detail::quadruple_values(f, alpha, 0)),
                           Ket::basis(shape, detail::quadruple_values(f, alpha, 1)),
                           Ket::basis(shape, detail::quadruple_values(f, alpha, 2)),
                           Ket::basis(shape, detail::quadruple_values(f, alpha, 3))}};
}

inline NaturalQuadruple natural_quadruple(BasisFamily f, int alpha) {
  return natural_quadruple(f, alpha, family_shape(f));
}

// Sign rows of the W/X/Y/Z combination over (A,B,C,D); symmetric, so the
// forward and inverse transforms share it.
inline constexpr int kWxyzSign[4][4] = {
    {+1, +1, +1, +1},
    {+1, +1, -1, -1},
    {+1, -1, +1, -1},
    {+1, -1, -1, +1},
};

namespace detail {

inline void require_orthonormal4(const std::array<Ket, 4>& kets, const char* who) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const Complex g = inner_product(kets[static_cast<std::size_t>(i)], kets[static_cast<std::size_t>(j)]);
      const Complex want = (i == j) ? Complex{1, 0} : Complex{0, 0};
      if (std::abs(g - want) > kOrthoTol) {
        throw std::invalid_argument(std::string(who) + ": inputs are not orthonormal");
      }
    }
  }
}

inline std::array<Ket, 4> half_sum_combinations(const std::array<Ket, 4>& in) {
  std::array<std::vector<Complex>, 4> acc;
  for (auto& v : acc) v.assign(in[0].amplitudes().size(), Complex{0, 0});
  for (int row = 0; row < 4; ++row) {
    for (int m = 0; m < 4; ++m) {
      const double w = 0.5 * kWxyzSign[row][m];
      const auto& amps = in[static_cast<std::size_t>(m)].amplitudes();
      for (std::size_t k = 0; k < amps.size(); ++k) {
        acc[static_cast<std::size_t>(row)][k] += w * amps[k];
      }
    }
  }
  return {Ket(in[0].shape(), std::move(acc[0])), Ket(in[0].shape(), std::move(acc[1])),
          Ket(in[0].shape(), std::move(acc[2])), Ket(in[0].shape(), std::move(acc[3]))};
}

}  // namespace detail

// (A,B,C,D) -> (W,X,Y,Z).
inline std::array<Ket, 4> wxyz_from_quadruple(const NaturalQuadruple& q) {
  detail::require_orthonormal4(q.kets, "wxyz_from_quadruple");
  return detail::half_sum_combinations(q.kets);
}

// (W,X,Y,Z) -> (A,B,C,D); inverse of the above ("the same form").
inline NaturalQuadruple quadruple_from_wxyz(const Ket& w, const Ket& x,
                                            const Ket& y, const Ket& z) {
  const std::array<Ket, 4> in{w, x, y, z};
  detail::require_orthonormal4(in, "quadruple_from_wxyz");
  auto out = detail::half_sum_combinations(in);
  return NaturalQuadruple{std::move(out)};
}

inline Ket basis_vector(BasisFamily f, BasisLabel label, const RegisterShape& shape) {
  const NaturalQuadruple q = natural_quadruple(f, label.index, shape);
  const int row = static_cast<int>(label.letter);
  std::vector<Complex> acc(q.a().amplitudes().size(), Complex{0, 0});
  for (int m = 0; m < 4; ++m) {
    const double w = 0.5 * kWxyzSign[row][m];
    const auto& amps = q.kets[static_cast<std::size_t>(m)].amplitudes();
    for (std::size_t k = 0; k < amps.size(); ++k) acc[k] += w * amps[k];
  }
  return Ket(shape, std::move(acc));
}

inline Ket basis_vector(BasisFamily f, BasisLabel label) {
  return basis_vector(f, label, family_shape(f));
}

inline Ket basis_vector(BasisFamily f, BasisLabel label,
                        const std::vector<std::string>& labels) {
  return basis_vector(f, label, family_shape(f, labels));
}

inline std::vector<std::pair<BasisLabel, Ket>> full_basis(BasisFamily f,
                                                          const RegisterShape& shape) {
  std::vector<std::pair<BasisLabel, Ket>> out;
  out.reserve(16);
  for (const BasisLabel& label : all_basis_labels()) {
    out.emplace_back(label, basis_vector(f, label, shape));
  }
  return out;
}

inline std::vector<std::pair<BasisLabel, Ket>> full_basis(BasisFamily f) {
  return full_basis(f, family_shape(f));
}

// Largest |<b_i|b_j> - delta_ij| over the 16x16 Gram matrix.
inline double gram_deviation(BasisFamily f) {
  const auto basis = full_basis(f);
  double dev = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Complex g = inner_product(basis[i].second, basis[j].second);
      const Complex want = (i == j) ? Complex{1, 0} : Complex{0, 0};
      dev = std::max(dev, std::abs(g - want));
    }
  }
  return dev;
}

// Plain-text dump: one header line, then 16 rows of 16 amplitudes written as
// exact signed rationals ("1/2", "-1/2", "0"). Golden-file tests pin the bytes.
inline std::string basis_table_text(BasisFamily f) {
  const RegisterShape shape = family_shape(f);
  std::string out = "family ";
  out += family_name(f);
  out += " dims ";
  const auto dims = shape.dims();
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(dims[i]);
  }
  out += '\n';
  for (const auto& [label, ket] : full_basis(f, shape)) {
    out += label.name();
    for (const Complex& a : ket.amplitudes()) {
      if (std::abs(a.imag()) > kOrthoTol) {
        throw std::logic_error("basis_table_text: unexpected imaginary amplitude");
      }
      out += ' ';
      if (std::abs(a.real()) <= kOrthoTol) {
        out += '0';
      } else if (std::abs(a.real() - 0.5) <= kOrthoTol) {
        out += "1/2";
      } else if (std::abs(a.real() + 0.5) <= kOrthoTol) {
        out += "-1/2";
      } else {
        throw std::logic_error("basis_table_text: amplitude is not 0 or +-1/2");
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace qdisplace
