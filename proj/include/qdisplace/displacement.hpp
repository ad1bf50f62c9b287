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

// The displacement protocol: an unknown 4-level state held by Alice is
// teleported through a maximally entangled channel and re-emerges on Clara's
// subsystems, which may be of a different kind (ququart vs qubit pair).
//
//   1. total = input (x) channel basis state
//   2. Alice measures her input together with the channel half she received,
//      in a 16-element entangled family; all 16 outcomes have probability 1/16
//   3. the outcome label travels as a 4-bit classical message
//   4. Clara applies the outcome's 4x4 correction unitary and owns the state
//
// Corrections are not taken from the printed table; they are derived by a
// brute-force oracle (solve the 4x4 system mapping conditional columns to
// input columns) and the printed table is diffed against the oracle. The
// fidelity-1 recovery criterion is self-contained either way.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdisplace/bases.hpp"
#include "qdisplace/core.hpp"
#include "qdisplace/record.hpp"
#include "qdisplace/rng.hpp"

namespace qdisplace {

// --- the unknown input state ----------------------------------------------------

struct QuquartState {
  std::array<Complex, 4> amplitudes;  // alpha, beta, gamma, delta

  explicit QuquartState(std::array<Complex, 4> amps) : amplitudes(amps) {
    double n = 0.0;
    for (const Complex& a : amplitudes) n += std::norm(a);
    if (std::abs(n - 1.0) > kOrthoTol) {
      throw std::invalid_argument("QuquartState: amplitudes are not unit norm");
    }
  }

  static QuquartState normalized(std::array<Complex, 4> amps) {
    double n = 0.0;
    for (const Complex& a : amps) n += std::norm(a);
    if (n <= kZeroBranchTol) {
      throw std::invalid_argument("QuquartState: cannot normalize zero vector");
    }
    const double inv = 1.0 / std::sqrt(n);
    for (Complex& a : amps) a *= inv;
    return QuquartState(amps);
  }

  static QuquartState level(int i) {
    std::array<Complex, 4> a{};
    a.at(static_cast<std::size_t>(i)) = Complex{1, 0};
    return QuquartState(a);
  }

  static QuquartState random(SeededRng& rng) {
    return QuquartState(random_unit_amplitudes(rng));
  }

  Ket as_ket(const std::string& label) const {
    return Ket(make_shape({{label, 4}}),
               {amplitudes[0], amplitudes[1], amplitudes[2], amplitudes[3]});
  }
};

// iota on states: amplitude-preserving bijection between a ququart and a
// qubit pair, level i <-> bits (r,s) with i = 2r+s.
inline Ket iota(const QuquartState& q, const std::string& label_r,
                const std::string& label_s) {
  return Ket(make_shape({{label_r, 2}, {label_s, 2}}),
             {q.amplitudes[0], q.amplitudes[1], q.amplitudes[2], q.amplitudes[3]});
}

inline QuquartState iota_inverse(const Ket& pair) {
  if (pair.shape().dims() != std::vector<int>{2, 2}) {
    throw std::invalid_argument("iota_inverse: expected a [2,2] register");
  }
  return QuquartState({pair[0], pair[1], pair[2], pair[3]});
}

// --- protocol wiring ------------------------------------------------------------

enum class Variant { i, ii, iii, iv, v, vi, vii, viii };

inline const std::array<Variant, 8>& all_variants() {
  static const std::array<Variant, 8> v = {Variant::i,  Variant::ii, Variant::iii,
                                           Variant::iv, Variant::v,  Variant::vi,
                                           Variant::vii, Variant::viii};
  return v;
}

inline std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::i: return "i";
    case Variant::ii: return "ii";
    case Variant::iii: return "iii";
    case Variant::iv: return "iv";
    case Variant::v: return "v";
    case Variant::vi: return "vi";
    case Variant::vii: return "vii";
    case Variant::viii: return "viii";
  }
  throw std::invalid_argument("variant_name: unknown variant");
}

inline std::optional<Variant> parse_variant(std::string_view name) {
  for (Variant v : all_variants()) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

struct ProtocolConfig {
  Variant variant = Variant::i;
  RegisterShape input_shape;                  // Alice's unknown-state register
  BasisFamily channel_family = BasisFamily::CoupledShiftQI;
  BasisLabel channel_label{Letter::X, 1};
  std::vector<std::string> channel_labels;    // in channel-family factor order
  BasisFamily measure_family = BasisFamily::QuquartPair;
  std::vector<std::string> measured_labels;   // in measure-family factor order
  std::vector<std::string> correction_targets;  // Clara's subsystems

  RegisterShape total_shape() const {
    std::vector<Subsystem> subs = input_shape.subsystems();
    const RegisterShape chan = family_shape(channel_family, channel_labels);
    for (const auto& s : chan.subsystems()) subs.push_back(s);
    return RegisterShape(std::move(subs));
  }
};

namespace detail {

inline void validate_config(const ProtocolConfig& cfg) {
  const RegisterShape total = cfg.total_shape();  // throws on label overlap
  const RegisterShape meas = family_shape(cfg.measure_family, cfg.measured_labels);
  for (const auto& s : meas.subsystems()) {
    if (total.at(total.index_of(s.label)).dim != s.dim) {
      throw std::invalid_argument("ProtocolConfig: measured subsystem dim mismatch");
    }
  }
  // measured + correction targets partition the total register, and the
  // correction targets keep their original order so residual labels line up.
  std::vector<std::string> rest;
  for (const auto& s : total.subsystems()) {
    if (!meas.has_label(s.label)) rest.push_back(s.label);
  }
  if (rest != cfg.correction_targets) {
    throw std::invalid_argument("ProtocolConfig: labels do not partition the register");
  }
  int clara_dim = 1;
  for (const auto& label : cfg.correction_targets) {
    clara_dim *= total.at(total.index_of(label)).dim;
  }
  if (clara_dim != 4 || cfg.input_shape.total_dim() != 4) {
    throw std::invalid_argument("ProtocolConfig: input and output spaces must be 4-dimensional");
  }
}

}  // namespace detail

// The eight reaction wirings. Variants (i) and (iv) share register shapes and
// differ in the channel coupling convention: (i) uses the shift-style coupled
// family, (iv) the flip-style one.
inline ProtocolConfig variant_config(Variant v, BasisLabel channel_label = {Letter::X, 1}) {
  ProtocolConfig cfg;
  cfg.variant = v;
  cfg.channel_label = channel_label;
  switch (v) {
    case Variant::i:
      cfg.input_shape = make_shape({{"I", 4}});
      cfg.channel_family = BasisFamily::CoupledShiftQI;
      cfg.channel_labels = {"II", "1", "2"};
      cfg.measure_family = BasisFamily::QuquartPair;
      cfg.measured_labels = {"I", "II"};
      cfg.correction_targets = {"1", "2"};
      break;
    case Variant::ii:
      cfg.input_shape = make_shape({{"I", 4}});
      cfg.channel_family = BasisFamily::CoupledShiftIQ;
      cfg.channel_labels = {"1", "2", "II"};
      cfg.measure_family = BasisFamily::CoupledShiftIQ;
      cfg.measured_labels = {"1", "2", "I"};
      cfg.correction_targets = {"II"};
      break;
    case Variant::iii:
      cfg.input_shape = make_shape({{"I", 4}});
      cfg.channel_family = BasisFamily::QuquartPair;
      cfg.channel_labels = {"II", "III"};
      cfg.measure_family = BasisFamily::QuquartPair;
      cfg.measured_labels = {"I", "II"};
      cfg.correction_targets = {"III"};
      break;
    case Variant::iv:
      cfg.input_shape = make_shape({{"I", 4}});
      cfg.channel_family = BasisFamily::CoupledFlipQI;
      cfg.channel_labels = {"II", "1", "2"};
      cfg.measure_family = BasisFamily::QuquartPair;
      cfg.measured_labels = {"I", "II"};
      cfg.correction_targets = {"1", "2"};
      break;
    case Variant::v:
      cfg.input_shape = make_shape({{"1", 2}, {"2", 2}});
      cfg.channel_family = BasisFamily::CoupledShiftQI;
      cfg.channel_labels = {"I", "3", "4"};
      cfg.measure_family = BasisFamily::CoupledShiftIQ;
      cfg.measured_labels = {"1", "2", "I"};
      cfg.correction_targets = {"3", "4"};
      break;
    case Variant::vi:
      cfg.input_shape = make_shape({{"1", 2}, {"2", 2}});
      cfg.channel_family = BasisFamily::CoupledShiftQI;
      cfg.channel_labels = {"II", "3", "4"};
      cfg.measure_family = BasisFamily::CoupledShiftIQ;
      cfg.measured_labels = {"1", "2", "II"};
      cfg.correction_targets = {"3", "4"};
      break;
    case Variant::vii:
      cfg.input_shape = make_shape({{"1", 2}, {"2", 2}});
      cfg.channel_family = BasisFamily::CoupledShiftIQ;
      cfg.channel_labels = {"3", "4", "II"};
      cfg.measure_family = BasisFamily::FourQubit;
      cfg.measured_labels = {"1", "2", "3", "4"};
      cfg.correction_targets = {"II"};
      break;
    case Variant::viii:
      cfg.input_shape = make_shape({{"1", 2}, {"2", 2}});
      cfg.channel_family = BasisFamily::FourQubit;
      cfg.channel_labels = {"3", "4", "5", "6"};
      cfg.measure_family = BasisFamily::FourQubit;
      cfg.measured_labels = {"1", "2", "3", "4"};
      cfg.correction_targets = {"5", "6"};
      break;
  }
  detail::validate_config(cfg);
  return cfg;
}

// Input state as a Ket on Alice's register (through iota when it is a pair).
inline Ket input_ket(const ProtocolConfig& cfg, const QuquartState& input) {
  const auto labels = cfg.input_shape.labels();
  if (labels.size() == 1) return input.as_ket(labels[0]);
  return iota(input, labels[0], labels[1]);
}

inline Ket channel_ket(const ProtocolConfig& cfg) {
  return basis_vector(cfg.channel_family, cfg.channel_label, cfg.channel_labels);
}

// |Psi_total> = input (x) channel.
inline Ket build_total_state(const ProtocolConfig& cfg, const QuquartState& input) {
  return tensor_product(input_ket(cfg, input), channel_ket(cfg));
}

// Convenience for the paper's main wiring: unknown ququart on I, channel on
// (II,1,2) in the given coupled family.
inline Ket build_total_state(const QuquartState& input, BasisFamily channel_family,
                             BasisLabel channel_label) {
  ProtocolConfig cfg = variant_config(Variant::i, channel_label);
  cfg.channel_family = channel_family;
  detail::validate_config(cfg);
  return build_total_state(cfg, input);
}

// --- decomposition and corrections ----------------------------------------------

struct DecompositionEntry {
  BasisLabel outcome;
  double probability = 0.0;
  Ket conditional;  // renormalized, keeps the raw projection phase
};

inline Ket measurement_probe(const ProtocolConfig& cfg, BasisLabel outcome) {
  return basis_vector(cfg.measure_family, outcome, cfg.measured_labels);
}

// Expand the total state over the 16 measurement outcomes, in label order.
inline std::array<DecompositionEntry, 16> decompose(const Ket& total,
                                                    const ProtocolConfig& cfg) {
  std::array<DecompositionEntry, 16> out{
      DecompositionEntry{{}, 0.0, total}, DecompositionEntry{{}, 0.0, total},
      DecompositionEntry{{}, 0.0, total}, DecompositionEntry{{}, 0.0, total},
      DecompositionEntry{{}, 0.0, total}, DecompositionEntry{{}, 0.0, total},
      DecompositionEntry{{}, 0.0, total}, DecompositionEntry{{}, 0.0, total},
      DecompositionEntry{{}, 0.0, total}, DecompositionEntry{{}, 0.0, total},
      DecompositionEntry{{}, 0.0, total}, DecompositionEntry{{}, 0.0, total},
      DecompositionEntry{{}, 0.0, total}, DecompositionEntry{{}, 0.0, total},
      DecompositionEntry{{}, 0.0, total}, DecompositionEntry{{}, 0.0, total}};
  for (const BasisLabel& label : all_basis_labels()) {
    auto [p, conditional] = project_measure(total, measurement_probe(cfg, label));
    out[static_cast<std::size_t>(label.ordinal())] = {label, p, std::move(conditional)};
  }
  return out;
}

struct CorrectionTable {
  std::vector<UnitaryMatrix> entries;  // 16, label order

  const UnitaryMatrix& at(BasisLabel label) const {
    return entries.at(static_cast<std::size_t>(label.ordinal()));
  }
};

// Brute-force oracle: feed each computational basis input through the channel,
// read off the conditional column per outcome, and invert the 4x4 system.
// A channel that fails to produce a unitary solution is not maximally
// entangled and is rejected.
inline CorrectionTable derive_correction_oracle(const ProtocolConfig& cfg) {
  detail::validate_config(cfg);
  std::array<std::array<Ket, 16>, 4> conditionals = [&] {
    const Ket chan = channel_ket(cfg);
    std::array<std::optional<std::array<Ket, 16>>, 4> cols{};
    for (int k = 0; k < 4; ++k) {
      const Ket total = tensor_product(input_ket(cfg, QuquartState::level(k)), chan);
      std::array<std::optional<Ket>, 16> row{};
      for (const BasisLabel& label : all_basis_labels()) {
        auto [p, raw] = detail::project_component(total, measurement_probe(cfg, label));
        if (p <= kZeroBranchTol) {
          throw DegenerateChannelError("derive_correction_oracle: zero branch for basis input");
        }
        const double inv = 1.0 / std::sqrt(p);
        std::vector<Complex> amps = raw.amplitudes();
        for (Complex& a : amps) a *= inv;
        row[static_cast<std::size_t>(label.ordinal())] = Ket(raw.shape(), std::move(amps));
      }
      std::array<Ket, 16> materialized = {
          *row[0],  *row[1],  *row[2],  *row[3],  *row[4],  *row[5],  *row[6],  *row[7],
          *row[8],  *row[9],  *row[10], *row[11], *row[12], *row[13], *row[14], *row[15]};
      cols[static_cast<std::size_t>(k)] = std::move(materialized);
    }
    return std::array<std::array<Ket, 16>, 4>{*cols[0], *cols[1], *cols[2], *cols[3]};
  }();

  CorrectionTable table;
  table.entries.reserve(16);
  for (const BasisLabel& label : all_basis_labels()) {
    std::vector<Complex> c(16, Complex{0, 0});  // column k = conditional for e_k
    for (int k = 0; k < 4; ++k) {
      const Ket& cond = conditionals[static_cast<std::size_t>(k)][static_cast<std::size_t>(label.ordinal())];
      for (int n = 0; n < 4; ++n) {
        c[static_cast<std::size_t>(n) * 4 + static_cast<std::size_t>(k)] = cond[static_cast<std::size_t>(n)];
      }
    }
    std::vector<Complex> inv = detail::invert_matrix(4, std::move(c));
    try {
      table.entries.emplace_back(4, std::move(inv));
    } catch (const std::invalid_argument&) {
      throw DegenerateChannelError(
          "derive_correction_oracle: no unitary correction for outcome " + label.name());
    }
  }
  return table;
}

// Paper's main wiring (channel on (II,1,2), measurement in the ququart-pair
// family on (I,II)) with an arbitrary channel family/label.
inline CorrectionTable derive_correction_oracle(BasisFamily channel_family,
                                                BasisLabel channel_label,
                                                BasisFamily measure_family) {
  ProtocolConfig cfg = variant_config(Variant::i, channel_label);
  cfg.channel_family = channel_family;
  cfg.measure_family = measure_family;
  detail::validate_config(cfg);
  return derive_correction_oracle(cfg);
}

// The sixteen 4x4 matrices exactly as printed, as checkable claims. Whether
// they actually undo the protocol is decided by the comparison report.
inline CorrectionTable paper_correction_table() {
  static const int rows[16][4][4] = {
      // W_0..W_3
      {{0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}},
      {{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}},
      {{0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}},
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}},
      // X_0..X_3
      {{0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}},
      {{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}},
      {{0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}},
      {{-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}},
      // Y_0..Y_3
      {{0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}},
      {{0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, 1, 0, 0}},
      {{0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}},
      {{-1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}},
      // Z_0..Z_3
      {{0, 0, 0, -1}, {-1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}},
      {{0, 0, -1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}, {0, -1, 0, 0}},
      {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}, {-1, 0, 0, 0}},
      {{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}},
  };
  CorrectionTable table;
  table.entries.reserve(16);
  for (int o = 0; o < 16; ++o) {
    std::vector<Complex> e;
    e.reserve(16);
    for (int r = 0; r < 4; ++r) {
      for (int c = 0; c < 4; ++c) {
        e.emplace_back(static_cast<double>(rows[o][r][c]), 0.0);
      }
    }
    table.entries.emplace_back(4, std::move(e));
  }
  return table;
}

// --- table comparison -----------------------------------------------------------

enum class TableVerdict { MatchExact, MatchUpToGlobalPhase, Mismatch };

inline std::string_view verdict_name(TableVerdict v) {
  switch (v) {
    case TableVerdict::MatchExact: return "match-exact";
    case TableVerdict::MatchUpToGlobalPhase: return "match-up-to-global-phase";
    case TableVerdict::Mismatch: return "mismatch";
  }
  throw std::invalid_argument("verdict_name: unknown verdict");
}

struct CorrectionComparisonEntry {
  BasisLabel label;
  TableVerdict verdict = TableVerdict::Mismatch;
  double max_entry_diff = 0.0;  // after the best global phase
};

struct CorrectionComparison {
  std::array<CorrectionComparisonEntry, 16> entries{};

  int count(TableVerdict v) const {
    int n = 0;
    for (const auto& e : entries) n += (e.verdict == v);
    return n;
  }

  const CorrectionComparisonEntry& at(BasisLabel label) const {
    return entries.at(static_cast<std::size_t>(label.ordinal()));
  }
};

inline CorrectionComparison compare_correction_tables(const CorrectionTable& derived,
                                                      const CorrectionTable& paper) {
  CorrectionComparison report;
  for (const BasisLabel& label : all_basis_labels()) {
    const UnitaryMatrix& d = derived.at(label);
    const UnitaryMatrix& p = paper.at(label);
    CorrectionComparisonEntry entry{label, TableVerdict::Mismatch, 0.0};
    const double exact = max_abs_diff(d, p);
    if (exact <= kPhaseTol) {
      entry.verdict = TableVerdict::MatchExact;
      entry.max_entry_diff = exact;
    } else {
      // best global phase: align on the largest paper entry
      int best = 0;
      for (int i = 1; i < 16; ++i) {
        if (std::abs(p.entries()[static_cast<std::size_t>(i)]) >
            std::abs(p.entries()[static_cast<std::size_t>(best)])) {
          best = i;
        }
      }
      const Complex ratio = d.entries()[static_cast<std::size_t>(best)] /
                            p.entries()[static_cast<std::size_t>(best)];
      double diff = exact;
      if (std::abs(std::abs(ratio) - 1.0) <= kPhaseTol) {
        diff = max_abs_diff(d, p.scaled(ratio));
        if (diff <= kPhaseTol) entry.verdict = TableVerdict::MatchUpToGlobalPhase;
      }
      entry.max_entry_diff = std::min(diff, exact);
    }
    report.entries[static_cast<std::size_t>(label.ordinal())] = entry;
  }
  return report;
}

// --- running the protocol -------------------------------------------------------

struct ProtocolTrace {
  ProtocolConfig config;
  std::uint64_t seed = 0;
  bool forced = false;
  QuquartState input;       // recorded for verification only
  Ket channel;
  BasisLabel outcome;
  double probability = 0.0;
  int classical_message = 0;  // 4-bit code, = outcome ordinal
  Ket pre_correction;
  UnitaryMatrix correction;
  Ket final_state;
  double fidelity = 0.0;
};

namespace detail {

inline ProtocolTrace finish_run(const ProtocolConfig& cfg, const QuquartState& input,
                                std::uint64_t seed, bool forced, Ket&& total,
                                BasisLabel outcome, double probability,
                                Ket&& conditional, const CorrectionTable& table) {
  const UnitaryMatrix& u = table.at(outcome);
  Ket final_state = apply_unitary(u, conditional, cfg.correction_targets);
  int pos = 0;
  std::vector<Subsystem> subs;
  for (const auto& label : cfg.correction_targets) {
    subs.push_back({label, total.shape().at(total.shape().index_of(label)).dim});
    ++pos;
  }
  const Ket expected(RegisterShape(std::move(subs)),
                     {input.amplitudes[0], input.amplitudes[1], input.amplitudes[2],
                      input.amplitudes[3]});
  const double fid = fidelity_up_to_phase(final_state, expected);
  return ProtocolTrace{cfg,
                       seed,
                       forced,
                       input,
                       channel_ket(cfg),
                       outcome,
                       probability,
                       outcome.ordinal(),
                       std::move(conditional),
                       u,
                       std::move(final_state),
                       fid};
}

}  // namespace detail

// Sampled run: the outcome is drawn by inverse CDF over the 16 branch
// probabilities in fixed label order, using the seeded generator. Identical
// (config, input, seed) give identical traces.
inline ProtocolTrace run_protocol(const ProtocolConfig& cfg, const QuquartState& input,
                                  std::uint64_t seed) {
  detail::validate_config(cfg);
  Ket total = build_total_state(cfg, input);
  std::array<double, 16> probs{};
  for (const BasisLabel& label : all_basis_labels()) {
    auto [p, raw] = detail::project_component(total, measurement_probe(cfg, label));
    probs[static_cast<std::size_t>(label.ordinal())] = p;
  }
  SeededRng rng(seed);
  const double u = rng.next_double();
  double cdf = 0.0;
  BasisLabel outcome = all_basis_labels().back();
  for (const BasisLabel& label : all_basis_labels()) {
    cdf += probs[static_cast<std::size_t>(label.ordinal())];
    if (u < cdf) {
      outcome = label;
      break;
    }
  }
  auto [p, conditional] = project_measure(total, measurement_probe(cfg, outcome));
  const CorrectionTable table = derive_correction_oracle(cfg);
  return detail::finish_run(cfg, input, seed, /*forced=*/false, std::move(total), outcome,
                            p, std::move(conditional), table);
}

// Forced-outcome run for exhaustive verification; no sampling involved.
inline ProtocolTrace run_protocol_forced(const ProtocolConfig& cfg,
                                         const QuquartState& input, BasisLabel outcome,
                                         const CorrectionTable& table) {
  detail::validate_config(cfg);
  Ket total = build_total_state(cfg, input);
  auto [p, conditional] = project_measure(total, measurement_probe(cfg, outcome));
  return detail::finish_run(cfg, input, /*seed=*/0, /*forced=*/true, std::move(total),
                            outcome, p, std::move(conditional), table);
}

inline ProtocolTrace run_protocol_forced(const ProtocolConfig& cfg,
                                         const QuquartState& input, BasisLabel outcome) {
  return run_protocol_forced(cfg, input, outcome, derive_correction_oracle(cfg));
}

// One line, stable field order, 17-significant-digit numbers.
inline std::string serialize_trace(const ProtocolTrace& t) {
  RecordWriter rec("trace");
  rec.field("variant", variant_name(t.config.variant))
      .field("channel", std::string(family_name(t.config.channel_family)) + ":" +
                            t.config.channel_label.name())
      .field("seed", t.seed)
      .field("forced", t.forced ? "1" : "0")
      .field("outcome", t.outcome.name())
      .field("probability", t.probability)
      .field("message", t.classical_message)
      .field("correction", t.correction.entries())
      .field("final", t.final_state.amplitudes())
      .field("fidelity", t.fidelity);
  return rec.line();
}

}  // namespace qdisplace
