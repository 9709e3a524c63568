// Copyright 2026 The qudit-gates Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Element-level simulation of the OAM cyclic-shift circuits.
//
// A photon state is a map (path, l, env) -> amplitude. `env` indexes an
// orthonormal basis of a which-path environment register: every imperfect
// sorting stage (visibility V < 1) appends one environment qubit, tagging
// amplitude leaving its reflected-even/"even" port with |0> and its "odd" port
// with V|0> + sqrt(1 - V^2)|1>. Detection probabilities sum |amp|^2 over env,
// so V is simultaneously the port leakage knob and the inter-arm coherence.
//
// Element semantics:
//   SpiralPhasePlate  l -> l + delta on one path
//   Mirror            l -> -l on one path, no phase
//   ParitySorter      splits onto out_even / out_odd with amplitude weights
//                     sqrt((1+V)/2) (correct parity) and sqrt((1-V)/2) (wrong);
//                     the `reflected` port additionally maps l -> -l
//   Recombiner        reverse sorter: each input port passes its own parity
//                     with sqrt((1+V)/2) and the other with sqrt((1-V)/2) onto
//                     `out`; the rest exits a dark port and is dropped. The
//                     `reflected` port maps l -> -l. LossyPbs scales by
//                     sqrt(throughput).
//   PhaseShift        multiplies by exp(i phi)

#include "qudit/core.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qudit::optics {

using PathLabel = std::string;

enum class Parity { Even, Odd };

Parity parity_of(int ell) noexcept;

struct SpiralPhasePlate {
  PathLabel path;
  int delta_ell = 0;
};

struct Mirror {
  PathLabel path;
};

struct ParitySorter {
  std::vector<PathLabel> in_paths;
  PathLabel out_even;
  PathLabel out_odd;
  Parity reflected = Parity::Even;
};

enum class RecombinerMode { Ideal, LossyPbs };

struct Recombiner {
  PathLabel in_even;
  PathLabel in_odd;
  PathLabel out;
  RecombinerMode mode = RecombinerMode::LossyPbs;
  Parity reflected = Parity::Odd;
};

struct PhaseShift {
  PathLabel path;
  double phi = 0.0;
};

using OpticalElement = std::variant<SpiralPhasePlate, Mirror, ParitySorter, Recombiner, PhaseShift>;

struct NoiseParams {
  double sorter_visibility = 1.0;  ///< V in [0, 1]
  double throughput = 0.5;         ///< lossy recombiner probability factor, (0, 1]

  static NoiseParams ideal() { return {1.0, 1.0}; }

  /// Throws std::invalid_argument when out of range.
  void validate() const;
};

struct ModeKey {
  PathLabel path;
  int ell = 0;
  std::uint32_t env = 0;

  auto operator<=>(const ModeKey&) const = default;
};

/// (label, amplitude) pairs describing a superposition on one path.
using ModeSuperposition = std::vector<std::pair<int, Complex>>;

class OAMAmplitudeMap {
 public:
  OAMAmplitudeMap() = default;

  static OAMAmplitudeMap basis(const PathLabel& path, int ell);
  static OAMAmplitudeMap on_path(const PathLabel& path, const ModeSuperposition& amplitudes);

  const std::map<ModeKey, Complex>& entries() const noexcept { return entries_; }
  const std::set<PathLabel>& live_paths() const noexcept { return live_; }
  bool is_live(const PathLabel& path) const { return live_.contains(path); }
  int environment_qubits() const noexcept { return env_qubits_; }

  Complex amplitude(const PathLabel& path, int ell, std::uint32_t env = 0) const;

  /// Sum over env of |amp(path, ell, env)|^2.
  double probability(const PathLabel& path, int ell) const;
  double total_probability() const;

  /// Sum over env of |<target|psi_env>|^2 for a (not necessarily normalized)
  /// target superposition on `path`.
  double projection_probability(const PathLabel& path, const ModeSuperposition& target) const;

  // Mutation for element implementations.
  void add(const ModeKey& key, Complex amp);
  void set_live(const PathLabel& path) { live_.insert(path); }
  void kill(const PathLabel& path) { live_.erase(path); }
  /// Reserves a fresh environment qubit and returns its bit mask.
  std::uint32_t allocate_environment_qubit();

 private:
  std::map<ModeKey, Complex> entries_;
  std::set<PathLabel> live_;
  int env_qubits_ = 0;
};

class OpticalCircuit {
 public:
  /// Checks that every element only touches live paths and that `output`
  /// is live at the end. Throws CircuitError.
  OpticalCircuit(SubspaceMap map, std::vector<OpticalElement> elements, PathLabel input = "in",
                 PathLabel output = "out");

  const SubspaceMap& map() const noexcept { return map_; }
  QuditDim dim() const noexcept { return map_.dim(); }
  const std::vector<OpticalElement>& elements() const noexcept { return elements_; }
  const PathLabel& input_path() const noexcept { return input_; }
  const PathLabel& output_path() const noexcept { return output_; }

  /// Same circuit with every recombiner switched to `mode`.
  OpticalCircuit with_recombiner_mode(RecombinerMode mode) const;

 private:
  SubspaceMap map_;
  std::vector<OpticalElement> elements_;
  PathLabel input_;
  PathLabel output_;
};

enum class GateKind { X, X2, Xdagger };

const char* to_string(GateKind kind) noexcept;

/// The three d = 4 cyclic-shift circuits on the paths in -> {even, odd} -> out.
/// For a window other than {-2..1}, plates shifting into and out of that
/// window are added at the input and output. Throws std::invalid_argument
/// for d != 4.
OpticalCircuit build_gate_circuit(GateKind kind, const SubspaceMap& map,
                                  RecombinerMode mode = RecombinerMode::LossyPbs);

/// Logical permutation each kind should realize: expected[i] = output level.
std::vector<int> expected_permutation(GateKind kind, QuditDim dim);

/// The matching qudit-core gate.
GateMatrix target_gate(GateKind kind, QuditDim dim);

OAMAmplitudeMap apply_element(const OpticalElement& e, const OAMAmplitudeMap& state, const NoiseParams& noise);

/// Left fold of apply_element. The input must live on the circuit's input
/// path only.
OAMAmplitudeMap propagate(const OpticalCircuit& c, const OAMAmplitudeMap& input, const NoiseParams& noise);

enum class CountForm { Probability, Counts };

/// Rows are input modes, columns output modes, both over the map's window.
class CountMatrix {
 public:
  CountMatrix(SubspaceMap map, Eigen::MatrixXd values, CountForm form);

  const SubspaceMap& map() const noexcept { return map_; }
  QuditDim dim() const noexcept { return map_.dim(); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  CountForm form() const noexcept { return form_; }
  double operator()(int row, int col) const { return values_(row, col); }

 private:
  SubspaceMap map_;
  Eigen::MatrixXd values_;
  CountForm form_;
};

/// P(i, j) = |<j|out(i)>|^2 / sum_n |<n|out(i)>|^2 with n over the window.
CountMatrix correlation_matrix(const OpticalCircuit& c, const NoiseParams& noise);

/// Effective window-to-window amplitude matrix under ideal noise, with every
/// recombiner treated as lossless.
GateMatrix transfer_matrix(const OpticalCircuit& c);

/// |tr(g^dagger T)| / d with T = transfer_matrix(c).
double circuit_unitary_fidelity(const OpticalCircuit& c, const GateMatrix& g);

struct EfficiencyReport {
  std::vector<double> per_input;
  double mean = 0.0;
};

/// E_i = m(i, expected[i]) / sum_j m(i, j). Throws UndefinedEfficiency on a
/// zero row.
EfficiencyReport efficiency(const CountMatrix& m, std::span<const int> expected);

struct SuperpositionReport {
  double p_expected_plus = 0.0;
  double p_orthogonal_plus = 0.0;
  double p_expected_minus = 0.0;
  double p_orthogonal_minus = 0.0;
  /// Mean over both signs of p_expected / (p_expected + p_orthogonal).
  double mean = 0.0;
};

/// Sends (|w_{d-2}> +- |w_{d-1}>)/sqrt2 through the circuit and projects on
/// (|w_{d-1}> +- |w_0>)/sqrt2 and its orthogonal partner, where w_j are the
/// window's OAM labels. For the experiment window that is (|0> +- |1>) ->
/// (|1> +- |-2>). Meaningful for X circuits.
SuperpositionReport superposition_report(const OpticalCircuit& c, const NoiseParams& noise);
double superposition_visibility(const OpticalCircuit& c, const NoiseParams& noise);

/// Mean efficiency of build_gate_circuit(kind, experiment_subspace()) at the
/// given visibility, default recombiner.
double simulated_mean_efficiency(GateKind kind, double visibility);

struct CalibrationOptions {
  double tolerance = 1e-3;
  int max_iterations = 200;
};

/// Bisection over V in [0, 1] for the target mean efficiency. Throws
/// CalibrationError when the target lies outside (0.25, 1] or outside the
/// achievable range, or when a non-monotone step is observed.
NoiseParams calibrate_visibility(GateKind kind, double target_mean_efficiency, CalibrationOptions options = {});

/// Per-row categorical sampling. Row r draws from an mt19937_64 seeded with
/// splitmix64(seed + (r + 1) * 0x9E3779B97F4A7C15); each draw takes
/// u = (x >> 11) * 2^-53 and picks the first column whose running sum
/// exceeds u. Throws std::invalid_argument for shots < 1 or count input.
CountMatrix monte_carlo_counts(const CountMatrix& m, long long shots_per_input, std::uint64_t seed);

}  // namespace qudit::optics
