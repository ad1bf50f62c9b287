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

// Numerical demonstration that neither precise cloning nor cross-encoding
// ("imprecise") cloning through the iota dictionary survives linear/unitary
// evolution.
//
// Two independent routes:
//   - inner products: a unitary cloner forces s = s * s_enc for every state
//     pair with overlap s; since iota preserves overlaps, s_enc = s, and
//     s = s^2 fails everywhere except s in {0,1}. The deficit |s - s^2| is
//     the obstruction.
//   - linear extension: define the cloner on computational basis inputs
//     (where the target map is consistent), extend linearly with a fixed
//     machine state, and measure the fidelity against the desired cloned
//     product; any genuine superposition scores strictly below 1.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qdisplace/core.hpp"
#include "qdisplace/rng.hpp"

namespace qdisplace {

enum class CloneTask {
  PreciseQubit,     // |psi2> -> |psi2>|psi2>
  PreciseQuquart,   // |psi4> -> |psi4>|psi4>
  Imprecise22To4,   // |psi22> -> |psi22>|psi4>, copy through iota^-1
  Imprecise4To22,   // |psi4> -> |psi4>|psi22>, copy through iota
};

inline std::string_view clone_task_name(CloneTask t) {
  switch (t) {
    case CloneTask::PreciseQubit: return "PRECISE_QUBIT";
    case CloneTask::PreciseQuquart: return "PRECISE_QUQUART";
    case CloneTask::Imprecise22To4: return "IMPRECISE_22_TO_4";
    case CloneTask::Imprecise4To22: return "IMPRECISE_4_TO_22";
  }
  throw std::invalid_argument("clone_task_name: unknown task");
}

inline std::optional<CloneTask> parse_clone_task(std::string_view name) {
  for (CloneTask t : {CloneTask::PreciseQubit, CloneTask::PreciseQuquart,
                      CloneTask::Imprecise22To4, CloneTask::Imprecise4To22}) {
    if (clone_task_name(t) == name) return t;
  }
  return std::nullopt;
}

inline std::vector<int> clone_source_dims(CloneTask t) {
  switch (t) {
    case CloneTask::PreciseQubit: return {2};
    case CloneTask::PreciseQuquart: return {4};
    case CloneTask::Imprecise22To4: return {2, 2};
    case CloneTask::Imprecise4To22: return {4};
  }
  throw std::invalid_argument("clone_source_dims: unknown task");
}

struct ObstructionReport {
  CloneTask task = CloneTask::PreciseQuquart;
  double overlap_s = 0.0;               // s = |<psi|phi>|
  double required = 0.0;                // s^2, what a unitary cloner would need
  double deficit = 0.0;                 // |s - s^2|
  double linear_extension_fidelity = 1.0;  // extension route, evaluated on psi
};

namespace detail {

inline void require_clone_source(const Ket& k, CloneTask task, const char* who) {
  if (k.shape().dims() != clone_source_dims(task)) {
    throw std::invalid_argument(std::string(who) + ": register does not match task kind");
  }
  if (std::abs(k.norm_squared() - 1.0) > 1e-9) {
    throw std::invalid_argument(std::string(who) + ": state is not unit norm");
  }
}

inline bool is_computational_basis_state(const Ket& k) {
  int nonzero = 0;
  for (const Complex& a : k.amplitudes()) nonzero += (std::abs(a) > kOrthoTol);
  return nonzero == 1;
}

}  // namespace detail

// Fidelity between the linear extension's output and the desired cloned
// product. The machine state is a fixed auxiliary register independent of the
// input, so it cancels: with input sum_k c_k |k>, the extension emits
// sum_k c_k |k>|enc(k)> while the target is (sum c_i |i>)(sum c_j |enc(j)>),
// and the squared overlap collapses to |sum_k conj(c_k) |c_k|^2|^2.
// Returns 1 on computational basis inputs (the clone is defined there).
inline double linear_extension_fidelity(CloneTask task, const Ket& superposition,
                                        bool require_strict_superposition = false) {
  detail::require_clone_source(superposition, task, "linear_extension_fidelity");
  if (detail::is_computational_basis_state(superposition)) {
    if (require_strict_superposition) {
      throw std::invalid_argument(
          "linear_extension_fidelity: basis state given where a superposition is required");
    }
  }
  Complex overlap{0, 0};
  for (const Complex& c : superposition.amplitudes()) {
    overlap += std::conj(c) * std::norm(c);
  }
  return std::norm(overlap);
}

inline double linear_extension_deficit(CloneTask task, const Ket& superposition) {
  return 1.0 - linear_extension_fidelity(task, superposition);
}

// Inner-product route. Also asserts the encoding invariance it relies on:
// iota is an amplitude-preserving reshape, so |<enc a|enc b>| = |<a|b>|.
inline ObstructionReport overlap_obstruction(const Ket& psi, const Ket& phi,
                                             CloneTask task) {
  detail::require_clone_source(psi, task, "overlap_obstruction");
  detail::require_clone_source(phi, task, "overlap_obstruction");
  const double s = std::abs(inner_product(psi, phi));

  // enc is identity, iota, or iota^-1; all three are reshapes of the
  // amplitude vector, so the encoded overlap is computed on raw amplitudes.
  Complex enc_overlap{0, 0};
  for (std::size_t i = 0; i < psi.amplitudes().size(); ++i) {
    enc_overlap += std::conj(psi.amplitudes()[i]) * phi.amplitudes()[i];
  }
  if (std::abs(std::abs(enc_overlap) - s) > kOrthoTol) {
    throw std::logic_error("overlap_obstruction: encoding failed to preserve overlaps");
  }

  ObstructionReport report;
  report.task = task;
  report.overlap_s = s;
  report.required = s * s;
  report.deficit = std::abs(s - s * s);
  report.linear_extension_fidelity = linear_extension_fidelity(task, psi);
  return report;
}

// Max | |<iota a|iota b>| - |<a|b>| | over seeded random state pairs.
inline double iota_isometry_check(int samples, std::uint64_t seed = 0x71C0DE5EEDULL) {
  if (samples < 1) {
    throw std::invalid_argument("iota_isometry_check: need at least one sample");
  }
  SeededRng rng(seed);
  const RegisterShape quart = make_shape({{"q", 4}});
  const RegisterShape pair = make_shape({{"r", 2}, {"s", 2}});
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const auto a = random_unit_amplitudes(rng);
    const auto b = random_unit_amplitudes(rng);
    const Ket qa(quart, {a[0], a[1], a[2], a[3]});
    const Ket qb(quart, {b[0], b[1], b[2], b[3]});
    const Ket pa(pair, {a[0], a[1], a[2], a[3]});
    const Ket pb(pair, {b[0], b[1], b[2], b[3]});
    const double dev =
        std::abs(std::abs(inner_product(pa, pb)) - std::abs(inner_product(qa, qb)));
    worst = std::max(worst, dev);
  }
  return worst;
}

}  // namespace qdisplace
