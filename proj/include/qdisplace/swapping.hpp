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

// Entanglement swapping with displacement: two independent channel states are
// prepared, a joint measurement on one regrouping collapses the register, and
// the unmeasured subsystems inherit a definite entangled state that never
// interacted directly.
//
// The total state expands as exactly 16 product terms
//     Phi = sum_mu c_mu |measured basis mu> (x) |partner(mu)>
// with |c_mu| = 1/4, one partner per outcome. The pairing is derived here by
// brute-force expansion; the printed table is kept verbatim as claims and
// diffed against the derivation, including a self-consistency scan that
// surfaces its duplicated partner labels.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdisplace/bases.hpp"
#include "qdisplace/core.hpp"
#include "qdisplace/rng.hpp"

namespace qdisplace {

enum class SwapVariant { i, ii, iii, iv };

inline const std::array<SwapVariant, 4>& all_swap_variants() {
  static const std::array<SwapVariant, 4> v = {SwapVariant::i, SwapVariant::ii,
                                               SwapVariant::iii, SwapVariant::iv};
  return v;
}

inline std::string_view swap_variant_name(SwapVariant v) {
  switch (v) {
    case SwapVariant::i: return "i";
    case SwapVariant::ii: return "ii";
    case SwapVariant::iii: return "iii";
    case SwapVariant::iv: return "iv";
  }
  throw std::invalid_argument("swap_variant_name: unknown variant");
}

inline std::optional<SwapVariant> parse_swap_variant(std::string_view name) {
  for (SwapVariant v : all_swap_variants()) {
    if (swap_variant_name(v) == name) return v;
  }
  return std::nullopt;
}

struct SwapChannel {
  BasisFamily family = BasisFamily::CoupledShiftQI;
  BasisLabel label{Letter::X, 1};
  std::vector<std::string> labels;

  Ket ket() const { return basis_vector(family, label, labels); }
};

struct SwapConfig {
  SwapVariant variant = SwapVariant::i;
  bool transposed = false;
  SwapChannel left;
  SwapChannel right;
  BasisFamily measured_family = BasisFamily::FourQubitShift;
  std::vector<std::string> measured_labels;
  BasisFamily partner_family = BasisFamily::QuquartPair;
  std::vector<std::string> retained_labels;
};

// Register wirings for the four swapping diagrams. Coupled channel states use
// the shift family throughout, matching the explicit channel expansions.
inline SwapConfig swap_variant_config(SwapVariant v, BasisLabel left_label = {Letter::X, 1},
                                      BasisLabel right_label = {Letter::X, 1}) {
  SwapConfig cfg;
  cfg.variant = v;
  switch (v) {
    case SwapVariant::i:
      // (I ** 12) + (34 ** II) -> measure the four qubits, retain (I,II)
      cfg.left = {BasisFamily::CoupledShiftQI, left_label, {"I", "1", "2"}};
      cfg.right = {BasisFamily::CoupledShiftIQ, right_label, {"3", "4", "II"}};
      cfg.measured_family = BasisFamily::FourQubitShift;
      cfg.measured_labels = {"1", "2", "3", "4"};
      cfg.partner_family = BasisFamily::QuquartPair;
      cfg.retained_labels = {"I", "II"};
      break;
    case SwapVariant::ii:
      // (I ** 12) + (56 ** 34): six qubits and one ququart
      cfg.left = {BasisFamily::CoupledShiftQI, left_label, {"I", "1", "2"}};
      cfg.right = {BasisFamily::FourQubitShift, right_label, {"5", "6", "3", "4"}};
      cfg.measured_family = BasisFamily::FourQubitShift;
      cfg.measured_labels = {"1", "2", "3", "4"};
      cfg.partner_family = BasisFamily::CoupledShiftQI;
      cfg.retained_labels = {"I", "5", "6"};
      break;
    case SwapVariant::iii:
      // same channels as (i); measure (I,3,4), II stays with Clara
      cfg.left = {BasisFamily::CoupledShiftQI, left_label, {"I", "1", "2"}};
      cfg.right = {BasisFamily::CoupledShiftIQ, right_label, {"3", "4", "II"}};
      cfg.measured_family = BasisFamily::CoupledShiftQI;
      cfg.measured_labels = {"I", "3", "4"};
      cfg.partner_family = BasisFamily::CoupledShiftIQ;
      cfg.retained_labels = {"1", "2", "II"};
      break;
    case SwapVariant::iv:
      // (I ** 12) + (III ** II): three ququarts and two qubits
      cfg.left = {BasisFamily::CoupledShiftQI, left_label, {"I", "1", "2"}};
      cfg.right = {BasisFamily::QuquartPair, right_label, {"III", "II"}};
      cfg.measured_family = BasisFamily::QuquartPair;
      cfg.measured_labels = {"I", "III"};
      cfg.partner_family = BasisFamily::CoupledShiftIQ;
      cfg.retained_labels = {"1", "2", "II"};
      break;
  }
  return cfg;
}

// Exchange measured and retained groupings: the collapsed pair states become
// the channels and the original channels become the measurement grouping.
inline SwapConfig transposed(const SwapConfig& cfg, BasisLabel left_label = {Letter::X, 1},
                             BasisLabel right_label = {Letter::X, 1}) {
  SwapConfig t;
  t.variant = cfg.variant;
  t.transposed = !cfg.transposed;
  t.left = {cfg.measured_family, left_label, cfg.measured_labels};
  t.right = {cfg.partner_family, right_label, cfg.retained_labels};
  t.measured_family = cfg.left.family;
  t.measured_labels = cfg.left.labels;
  t.partner_family = cfg.right.family;
  t.retained_labels = cfg.right.labels;
  return t;
}

// |Phi_total> = left channel (x) right channel. Register overlap throws.
inline Ket build_swap_total(const SwapConfig& cfg) {
  return tensor_product(cfg.left.ket(), cfg.right.ket());
}

struct PairingEntry {
  BasisLabel measured;
  BasisLabel partner;
  double coefficient = 0.0;
};

using PairingTable = std::array<PairingEntry, 16>;

namespace detail {

inline Ket retained_probe(const SwapConfig& cfg, BasisLabel label) {
  return basis_vector(cfg.partner_family, label, cfg.retained_labels);
}

}  // namespace detail

// Expand the total state in (measured family) x (partner family) and read off
// the 16 nonzero coefficients. A measured outcome overlapping more than one
// partner signals a basis or permutation bug and is rejected.
inline PairingTable derive_pairing_table(const Ket& total, const SwapConfig& cfg) {
  PairingTable table{};
  for (const BasisLabel& mu : all_basis_labels()) {
    const Ket probe = basis_vector(cfg.measured_family, mu, cfg.measured_labels);
    auto [p, raw] = detail::project_component(total, probe);
    std::optional<BasisLabel> partner;
    double coefficient = 0.0;
    for (const BasisLabel& rho : all_basis_labels()) {
      const Complex c = inner_product(detail::retained_probe(cfg, rho), raw);
      if (std::abs(c) <= kOrthoTol) continue;
      if (partner.has_value()) {
        throw std::runtime_error("derive_pairing_table: outcome " + mu.name() +
                                 " has more than one partner");
      }
      if (std::abs(c.imag()) > kOrthoTol) {
        throw std::runtime_error("derive_pairing_table: non-real pairing coefficient");
      }
      partner = rho;
      coefficient = c.real();
    }
    if (!partner.has_value()) {
      throw std::runtime_error("derive_pairing_table: outcome " + mu.name() +
                               " has no partner");
    }
    table[static_cast<std::size_t>(mu.ordinal())] = {mu, *partner, coefficient};
  }
  return table;
}

inline PairingTable derive_pairing_table(const Ket& total) {
  return derive_pairing_table(total, swap_variant_config(SwapVariant::i));
}

// The printed pairing, duplicates and all. Kept verbatim as claims.
inline PairingTable paper_pairing_table() {
  auto entry = [](Letter ml, int mi, Letter pl, int pi, double c) {
    return PairingEntry{BasisLabel{ml, mi}, BasisLabel{pl, pi}, c};
  };
  return PairingTable{
      entry(Letter::W, 0, Letter::Z, 2, +0.25), entry(Letter::W, 1, Letter::X, 3, -0.25),
      entry(Letter::W, 2, Letter::Y, 0, -0.25), entry(Letter::W, 3, Letter::W, 1, +0.25),
      entry(Letter::X, 0, Letter::X, 2, +0.25), entry(Letter::X, 1, Letter::X, 3, -0.25),
      entry(Letter::X, 2, Letter::X, 0, -0.25), entry(Letter::X, 3, Letter::X, 1, -0.25),
      entry(Letter::Y, 0, Letter::W, 2, -0.25), entry(Letter::Y, 1, Letter::Y, 3, +0.25),
      entry(Letter::Y, 2, Letter::Z, 0, +0.25), entry(Letter::Y, 3, Letter::Z, 1, -0.25),
      entry(Letter::Z, 0, Letter::Y, 2, -0.25), entry(Letter::Z, 1, Letter::Z, 3, -0.25),
      entry(Letter::Z, 2, Letter::W, 0, +0.25), entry(Letter::Z, 3, Letter::Z, 1, +0.25),
  };
}

enum class PairingVerdict { Match, SignMismatch, PartnerMismatch };

inline std::string_view pairing_verdict_name(PairingVerdict v) {
  switch (v) {
    case PairingVerdict::Match: return "match";
    case PairingVerdict::SignMismatch: return "sign-mismatch";
    case PairingVerdict::PartnerMismatch: return "partner-mismatch";
  }
  throw std::invalid_argument("pairing_verdict_name: unknown verdict");
}

struct PairingComparisonEntry {
  BasisLabel measured;
  PairingVerdict verdict = PairingVerdict::PartnerMismatch;
  BasisLabel derived_partner;
  double derived_coefficient = 0.0;
  BasisLabel paper_partner;
  double paper_coefficient = 0.0;
};

// A partner label the printed table assigns to several measured outcomes.
struct DuplicatePartnerWarning {
  BasisLabel partner;
  std::vector<BasisLabel> measured;
};

struct PairingComparison {
  std::array<PairingComparisonEntry, 16> entries{};
  std::vector<DuplicatePartnerWarning> paper_duplicates;
  std::vector<BasisLabel> paper_missing_partners;

  int count(PairingVerdict v) const {
    int n = 0;
    for (const auto& e : entries) n += (e.verdict == v);
    return n;
  }
};

inline PairingComparison compare_pairing_tables(const PairingTable& derived,
                                                const PairingTable& paper) {
  PairingComparison report;
  for (int i = 0; i < 16; ++i) {
    const PairingEntry& d = derived[static_cast<std::size_t>(i)];
    const PairingEntry& p = paper[static_cast<std::size_t>(i)];
    PairingComparisonEntry e;
    e.measured = d.measured;
    e.derived_partner = d.partner;
    e.derived_coefficient = d.coefficient;
    e.paper_partner = p.partner;
    e.paper_coefficient = p.coefficient;
    if (d.partner == p.partner) {
      e.verdict = (std::abs(d.coefficient - p.coefficient) <= kOrthoTol)
                      ? PairingVerdict::Match
                      : PairingVerdict::SignMismatch;
    } else {
      e.verdict = PairingVerdict::PartnerMismatch;
    }
    report.entries[static_cast<std::size_t>(i)] = e;
  }
  // self-consistency scan of the printed table
  std::map<int, std::vector<BasisLabel>> by_partner;
  for (const PairingEntry& p : paper) {
    by_partner[p.partner.ordinal()].push_back(p.measured);
  }
  for (const auto& [ordinal, measured] : by_partner) {
    if (measured.size() > 1) {
      report.paper_duplicates.push_back(
          {BasisLabel::from_ordinal(ordinal), measured});
    }
  }
  for (const BasisLabel& label : all_basis_labels()) {
    if (!by_partner.contains(label.ordinal())) {
      report.paper_missing_partners.push_back(label);
    }
  }
  return report;
}

// 16-row text table: measured label, signed partner. Reused for the errata
// diff in the same format.
inline std::string pairing_table_text(const PairingTable& table) {
  std::string out;
  for (const PairingEntry& e : table) {
    out += e.measured.name();
    out += ' ';
    out += (e.coefficient >= 0.0) ? '+' : '-';
    out += e.partner.name();
    out += '\n';
  }
  return out;
}

struct SwapOutcome {
  BasisLabel outcome;       // measured label on the joint measurement
  double probability = 0.0;
  Ket residual;             // renormalized state on the retained subsystems
  BasisLabel residual_label;  // partner per the derived table
  double residual_fidelity = 0.0;  // |<partner|residual>|^2
};

namespace detail {

inline SwapOutcome collapse(const Ket& total, const SwapConfig& cfg, BasisLabel outcome,
                            const PairingTable& table) {
  const Ket probe = basis_vector(cfg.measured_family, outcome, cfg.measured_labels);
  auto [p, residual] = project_measure(total, probe);
  const PairingEntry& entry = table[static_cast<std::size_t>(outcome.ordinal())];
  const double fid =
      fidelity_up_to_phase(residual, detail::retained_probe(cfg, entry.partner));
  return SwapOutcome{outcome, p, std::move(residual), entry.partner, fid};
}

}  // namespace detail

// Joint measurement with a seeded collapse over the 16 branches.
inline SwapOutcome measure_swap(const Ket& total, const SwapConfig& cfg,
                                std::uint64_t seed) {
  std::array<double, 16> probs{};
  for (const BasisLabel& mu : all_basis_labels()) {
    auto [p, raw] = detail::project_component(
        total, basis_vector(cfg.measured_family, mu, cfg.measured_labels));
    probs[static_cast<std::size_t>(mu.ordinal())] = p;
  }
  SeededRng rng(seed);
  const double u = rng.next_double();
  double cdf = 0.0;
  BasisLabel outcome = all_basis_labels().back();
  for (const BasisLabel& mu : all_basis_labels()) {
    cdf += probs[static_cast<std::size_t>(mu.ordinal())];
    if (u < cdf) {
      outcome = mu;
      break;
    }
  }
  return detail::collapse(total, cfg, outcome, derive_pairing_table(total, cfg));
}

inline SwapOutcome measure_swap(const Ket& total, std::uint64_t seed) {
  return measure_swap(total, swap_variant_config(SwapVariant::i), seed);
}

// Deterministic branch enumeration for exhaustive verification.
inline SwapOutcome measure_swap_forced(const Ket& total, const SwapConfig& cfg,
                                       BasisLabel outcome) {
  return detail::collapse(total, cfg, outcome, derive_pairing_table(total, cfg));
}

}  // namespace qdisplace
