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

#include "qudit/optics.hpp"

#include "qudit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qudit::optics {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_live(const std::set<PathLabel>& live, const PathLabel& path, const char* element) {
  if (!live.contains(path)) throw CircuitError(std::string(element) + " references dead path '" + path + "'");
}

void require_fresh(const std::set<PathLabel>& live, const std::vector<PathLabel>& consumed, const PathLabel& path,
                   const char* element) {
  if (live.contains(path) && std::find(consumed.begin(), consumed.end(), path) == consumed.end()) {
    throw CircuitError(std::string(element) + " output path '" + path + "' is already live");
  }
}

// Checks the element against the live path set and applies its effect on it.
void update_liveness(const OpticalElement& e, std::set<PathLabel>& live) {
  std::visit(Overloaded{
                 [&](const SpiralPhasePlate& s) { require_live(live, s.path, "spiral phase plate"); },
                 [&](const Mirror& m) { require_live(live, m.path, "mirror"); },
                 [&](const PhaseShift& p) { require_live(live, p.path, "phase shift"); },
                 [&](const ParitySorter& s) {
                   if (s.in_paths.empty()) throw CircuitError("parity sorter has no input path");
                   if (s.out_even == s.out_odd) throw CircuitError("parity sorter outputs must differ");
                   for (const auto& p : s.in_paths) require_live(live, p, "parity sorter");
                   require_fresh(live, s.in_paths, s.out_even, "parity sorter");
                   require_fresh(live, s.in_paths, s.out_odd, "parity sorter");
                   for (const auto& p : s.in_paths) live.erase(p);
                   live.insert(s.out_even);
                   live.insert(s.out_odd);
                 },
                 [&](const Recombiner& r) {
                   if (r.in_even == r.in_odd) throw CircuitError("recombiner inputs must differ");
                   require_live(live, r.in_even, "recombiner");
                   require_live(live, r.in_odd, "recombiner");
                   require_fresh(live, {r.in_even, r.in_odd}, r.out, "recombiner");
                   live.erase(r.in_even);
                   live.erase(r.in_odd);
                   live.insert(r.out);
                 },
             },
             e);
}

double correct_weight(double v) { return std::sqrt((1.0 + v) / 2.0); }
double wrong_weight(double v) { return std::sqrt((1.0 - v) / 2.0); }

// Adds amplitude leaving an "odd" port at a stage with visibility v: the
// environment state V|0> + sqrt(1 - V^2)|1> on `bit`.
void add_tagged(OAMAmplitudeMap& out, ModeKey key, Complex amp, double v, std::uint32_t bit) {
  if (bit == 0) {
    out.add(key, amp);
    return;
  }
  out.add(key, amp * v);
  key.env |= bit;
  out.add(key, amp * std::sqrt(std::max(0.0, 1.0 - v * v)));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Parity parity_of(int ell) noexcept { return (ell % 2 == 0) ? Parity::Even : Parity::Odd; }

void NoiseParams::validate() const {
  if (!(sorter_visibility >= 0.0 && sorter_visibility <= 1.0)) {
    throw std::invalid_argument("sorter visibility must lie in [0, 1]");
  }
  if (!(throughput > 0.0 && throughput <= 1.0)) throw std::invalid_argument("throughput must lie in (0, 1]");
}

OAMAmplitudeMap OAMAmplitudeMap::basis(const PathLabel& path, int ell) { return on_path(path, {{ell, 1.0}}); }

OAMAmplitudeMap OAMAmplitudeMap::on_path(const PathLabel& path, const ModeSuperposition& amplitudes) {
  OAMAmplitudeMap m;
  m.set_live(path);
  for (const auto& [ell, amp] : amplitudes) m.add({path, ell, 0}, amp);
  return m;
}

Complex OAMAmplitudeMap::amplitude(const PathLabel& path, int ell, std::uint32_t env) const {
  auto it = entries_.find({path, ell, env});
  return it == entries_.end() ? Complex{} : it->second;
}

double OAMAmplitudeMap::probability(const PathLabel& path, int ell) const {
  double p = 0.0;
  for (const auto& [key, amp] : entries_) {
    if (key.ell == ell && key.path == path) p += std::norm(amp);
  }
  return p;
}

double OAMAmplitudeMap::total_probability() const {
  double p = 0.0;
  for (const auto& [key, amp] : entries_) p += std::norm(amp);
  return p;
}

double OAMAmplitudeMap::projection_probability(const PathLabel& path, const ModeSuperposition& target) const {
  std::map<std::uint32_t, Complex> overlap;
  for (const auto& [ell, coeff] : target) {
    for (const auto& [key, amp] : entries_) {
      if (key.path == path && key.ell == ell) overlap[key.env] += std::conj(coeff) * amp;
    }
  }
  double p = 0.0;
  for (const auto& [env, a] : overlap) p += std::norm(a);
  return p;
}

void OAMAmplitudeMap::add(const ModeKey& key, Complex amp) {
  if (amp == Complex{}) return;
  entries_[key] += amp;
}

std::uint32_t OAMAmplitudeMap::allocate_environment_qubit() {
  if (env_qubits_ >= 32) throw CircuitError("too many imperfect sorting stages (environment register full)");
  return std::uint32_t{1} << env_qubits_++;
}

OpticalCircuit::OpticalCircuit(SubspaceMap map, std::vector<OpticalElement> elements, PathLabel input,
                               PathLabel output)
    : map_(map), elements_(std::move(elements)), input_(std::move(input)), output_(std::move(output)) {
  std::set<PathLabel> live{input_};
  for (const auto& e : elements_) update_liveness(e, live);
  if (!live.contains(output_)) throw CircuitError("output path '" + output_ + "' is not live after the last element");
}

OpticalCircuit OpticalCircuit::with_recombiner_mode(RecombinerMode mode) const {
  std::vector<OpticalElement> es = elements_;
  for (auto& e : es) {
    if (auto* r = std::get_if<Recombiner>(&e)) r->mode = mode;
  }
  return OpticalCircuit(map_, std::move(es), input_, output_);
}

const char* to_string(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::X2: return "X2";
    case GateKind::Xdagger: return "Xdg";
  }
  return "?";
}

OpticalCircuit build_gate_circuit(GateKind kind, const SubspaceMap& map, RecombinerMode mode) {
  if (map.dim().value() != 4) throw std::invalid_argument("the cyclic-shift circuits are defined for d = 4 only");

  const PathLabel in = "in", even = "even", odd = "odd", out = "out";
  const ParitySorter ps1{{in}, even, odd, Parity::Even};
  const Recombiner ps2{even, odd, out, mode, Parity::Odd};

  // Shift the caller's window onto {-2, -1, 0, 1} and back.
  const int shift = -2 - map.oam_offset();

  std::vector<OpticalElement> es;
  if (shift != 0) es.emplace_back(SpiralPhasePlate{in, shift});
  switch (kind) {
    case GateKind::X:
      es.emplace_back(SpiralPhasePlate{in, +1});
      es.emplace_back(ps1);
      es.emplace_back(Mirror{even});
      es.emplace_back(Mirror{even});
      es.emplace_back(Mirror{odd});
      es.emplace_back(ps2);
      break;
    case GateKind::X2:
      es.emplace_back(ps1);
      es.emplace_back(Mirror{even});
      es.emplace_back(Mirror{odd});
      es.emplace_back(SpiralPhasePlate{even, +2});
      es.emplace_back(ps2);
      es.emplace_back(Mirror{out});
      break;
    case GateKind::Xdagger:
      es.emplace_back(ps1);
      es.emplace_back(Mirror{even});
      es.emplace_back(Mirror{even});
      es.emplace_back(Mirror{odd});
      es.emplace_back(ps2);
      es.emplace_back(SpiralPhasePlate{out, -1});
      break;
  }
  if (shift != 0) es.emplace_back(SpiralPhasePlate{out, -shift});
  return OpticalCircuit(map, std::move(es), in, out);
}

std::vector<int> expected_permutation(GateKind kind, QuditDim dim) {
  const int d = dim.value();
  const int n = kind == GateKind::X ? 1 : (kind == GateKind::X2 ? 2 : d - 1);
  std::vector<int> perm(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = (i + n) % d;
  return perm;
}

GateMatrix target_gate(GateKind kind, QuditDim dim) {
  switch (kind) {
    case GateKind::X: return make_x(dim);
    case GateKind::X2: return gate_power(make_x(dim), 2);
    case GateKind::Xdagger: return dagger(make_x(dim));
  }
  throw std::invalid_argument("unsupported gate kind");
}

OAMAmplitudeMap apply_element(const OpticalElement& e, const OAMAmplitudeMap& state, const NoiseParams& noise) {
  noise.validate();
  std::set<PathLabel> live = state.live_paths();
  update_liveness(e, live);

  OAMAmplitudeMap out;
  for (const auto& p : live) out.set_live(p);
  for (int k = 0; k < state.environment_qubits(); ++k) out.allocate_environment_qubit();

  const double v = noise.sorter_visibility;

  std::visit(
      Overloaded{
          [&](const SpiralPhasePlate& s) {
            for (const auto& [key, amp] : state.entries()) {
              out.add(key.path == s.path ? ModeKey{key.path, key.ell + s.delta_ell, key.env} : key, amp);
            }
          },
          [&](const Mirror& m) {
            for (const auto& [key, amp] : state.entries()) {
              out.add(key.path == m.path ? ModeKey{key.path, -key.ell, key.env} : key, amp);
            }
          },
          [&](const PhaseShift& p) {
            const Complex phase = std::polar(1.0, p.phi);
            for (const auto& [key, amp] : state.entries()) out.add(key, key.path == p.path ? amp * phase : amp);
          },
          [&](const ParitySorter& s) {
            const std::uint32_t bit = v < 1.0 ? out.allocate_environment_qubit() : 0;
            const double a = correct_weight(v), b = wrong_weight(v);
            for (const auto& [key, amp] : state.entries()) {
              if (std::find(s.in_paths.begin(), s.in_paths.end(), key.path) == s.in_paths.end()) {
                out.add(key, amp);
                continue;
              }
              const bool even = parity_of(key.ell) == Parity::Even;
              const int even_ell = s.reflected == Parity::Even ? -key.ell : key.ell;
              const int odd_ell = s.reflected == Parity::Odd ? -key.ell : key.ell;
              out.add({s.out_even, even_ell, key.env}, amp * (even ? a : b));
              add_tagged(out, {s.out_odd, odd_ell, key.env}, amp * (even ? b : a), v, bit);
            }
          },
          [&](const Recombiner& r) {
            const std::uint32_t bit = v < 1.0 ? out.allocate_environment_qubit() : 0;
            const double a = correct_weight(v), b = wrong_weight(v);
            const double loss = r.mode == RecombinerMode::LossyPbs ? std::sqrt(noise.throughput) : 1.0;
            for (const auto& [key, amp] : state.entries()) {
              const bool from_even = key.path == r.in_even;
              if (!from_even && key.path != r.in_odd) {
                out.add(key, amp);
                continue;
              }
              const Parity port = from_even ? Parity::Even : Parity::Odd;
              const double w = (parity_of(key.ell) == port ? a : b) * loss;
              const ModeKey target{r.out, r.reflected == port ? -key.ell : key.ell, key.env};
              if (from_even) {
                out.add(target, amp * w);
              } else {
                add_tagged(out, target, amp * w, v, bit);
              }
            }
          },
      },
      e);
  return out;
}

OAMAmplitudeMap propagate(const OpticalCircuit& c, const OAMAmplitudeMap& input, const NoiseParams& noise) {
  for (const auto& [key, amp] : input.entries()) {
    if (key.path != c.input_path()) {
      throw CircuitError("input amplitude on path '" + key.path + "', expected '" + c.input_path() + "'");
    }
  }
  OAMAmplitudeMap state;
  state.set_live(c.input_path());
  for (const auto& [key, amp] : input.entries()) state.add(key, amp);
  for (int k = 0; k < input.environment_qubits(); ++k) state.allocate_environment_qubit();

  for (const auto& e : c.elements()) state = apply_element(e, state, noise);
  return state;
}

CountMatrix::CountMatrix(SubspaceMap map, Eigen::MatrixXd values, CountForm form)
    : map_(map), values_(std::move(values)), form_(form) {
  if (values_.rows() != map_.dim().index() || values_.cols() != map_.dim().index()) {
    throw DimensionMismatch("count matrix must be " + std::to_string(map_.dim().value()) + "x" +
                            std::to_string(map_.dim().value()));
  }
}

CountMatrix correlation_matrix(const OpticalCircuit& c, const NoiseParams& noise) {
  const int d = c.dim().value();
  const std::vector<int> labels = c.map().oam_labels();
  Eigen::MatrixXd p(d, d);
  for (int i = 0; i < d; ++i) {
    const OAMAmplitudeMap out = propagate(c, OAMAmplitudeMap::basis(c.input_path(), labels[i]), noise);
    for (int j = 0; j < d; ++j) p(i, j) = out.probability(c.output_path(), labels[j]);
    const double total = p.row(i).sum();
    if (!(total > 0.0)) {
      throw UndefinedEfficiency("no amplitude reaches the detection window for input l = " +
                                std::to_string(labels[i]));
    }
    p.row(i) /= total;
  }
  return CountMatrix(c.map(), std::move(p), CountForm::Probability);
}

GateMatrix transfer_matrix(const OpticalCircuit& c) {
  const OpticalCircuit lossless = c.with_recombiner_mode(RecombinerMode::Ideal);
  const int d = c.dim().value();
  const std::vector<int> labels = c.map().oam_labels();
  Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const OAMAmplitudeMap out =
        propagate(lossless, OAMAmplitudeMap::basis(c.input_path(), labels[i]), NoiseParams::ideal());
    for (int j = 0; j < d; ++j) t(j, i) = out.amplitude(c.output_path(), labels[j]);
  }
  return GateMatrix(std::move(t));
}

double circuit_unitary_fidelity(const OpticalCircuit& c, const GateMatrix& g) {
  return phase_insensitive_overlap(g, transfer_matrix(c));
}

EfficiencyReport efficiency(const CountMatrix& m, std::span<const int> expected) {
  const int d = m.dim().value();
  if (static_cast<int>(expected.size()) != d) throw DimensionMismatch("expected permutation has wrong length");
  EfficiencyReport r;
  r.per_input.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const int j = expected[static_cast<std::size_t>(i)];
    if (j < 0 || j >= d) throw std::out_of_range("expected output index out of range");
    const double total = m.values().row(i).sum();
    if (!(total > 0.0)) throw UndefinedEfficiency("row " + std::to_string(i) + " has zero total");
    r.per_input.push_back(m(i, j) / total);
  }
  double sum = 0.0;
  for (double e : r.per_input) sum += e;
  r.mean = sum / d;
  return r;
}

SuperpositionReport superposition_report(const OpticalCircuit& c, const NoiseParams& noise) {
  const std::vector<int> w = c.map().oam_labels();
  const int d = c.dim().value();
  const double s = 1.0 / std::sqrt(2.0);

  auto run = [&](double sign, double& expected, double& orthogonal) {
    const auto in = OAMAmplitudeMap::on_path(c.input_path(), {{w[d - 2], s}, {w[d - 1], sign * s}});
    const OAMAmplitudeMap out = propagate(c, in, noise);
    expected = out.projection_probability(c.output_path(), {{w[d - 1], s}, {w[0], sign * s}});
    orthogonal = out.projection_probability(c.output_path(), {{w[d - 1], s}, {w[0], -sign * s}});
  };

  SuperpositionReport r;
  run(+1.0, r.p_expected_plus, r.p_orthogonal_plus);
  run(-1.0, r.p_expected_minus, r.p_orthogonal_minus);
  const double plus = r.p_expected_plus / (r.p_expected_plus + r.p_orthogonal_plus);
  const double minus = r.p_expected_minus / (r.p_expected_minus + r.p_orthogonal_minus);
  r.mean = 0.5 * (plus + minus);
  return r;
}

double superposition_visibility(const OpticalCircuit& c, const NoiseParams& noise) {
  return superposition_report(c, noise).mean;
}

double simulated_mean_efficiency(GateKind kind, double visibility) {
  const SubspaceMap map = experiment_subspace();
  const OpticalCircuit c = build_gate_circuit(kind, map);
  NoiseParams noise;
  noise.sorter_visibility = visibility;
  const auto perm = expected_permutation(kind, map.dim());
  return efficiency(correlation_matrix(c, noise), perm).mean;
}

NoiseParams calibrate_visibility(GateKind kind, double target, CalibrationOptions options) {
  std::map<double, double> samples;
  auto evaluate = [&](double v) {
    const double e = simulated_mean_efficiency(kind, v);
    auto [it, inserted] = samples.emplace(v, e);
    if (it != samples.begin() && std::prev(it)->second > e + 1e-12) {
      throw CalibrationError("mean efficiency is not monotone in visibility", samples.begin()->second,
                             samples.rbegin()->second);
    }
    if (auto next = std::next(it); next != samples.end() && next->second < e - 1e-12) {
      throw CalibrationError("mean efficiency is not monotone in visibility", samples.begin()->second,
                             samples.rbegin()->second);
    }
    return e;
  };

  const double e_lo = evaluate(0.0);
  const double e_hi = evaluate(1.0);
  auto unreachable = [&](const std::string& why) {
    return CalibrationError(why + "; achievable mean efficiency is [" + std::to_string(e_lo) + ", " +
                                std::to_string(e_hi) + "]",
                            e_lo, e_hi);
  };
  if (!(target > 0.25 && target <= 1.0)) throw unreachable("target " + std::to_string(target) + " outside (0.25, 1]");
  if (target > e_hi + options.tolerance || target < e_lo - options.tolerance) {
    throw unreachable("target " + std::to_string(target) + " unreachable");
  }

  NoiseParams result;
  if (target >= e_hi) {
    result.sorter_visibility = 1.0;
    return result;
  }
  if (target <= e_lo) {
    result.sorter_visibility = 0.0;
    return result;
  }

  double lo = 0.0, hi = 1.0, best = 0.5, best_err = 1.0;
  for (int it = 0; it < options.max_iterations && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double e = evaluate(mid);
    if (std::abs(e - target) < best_err) {
      best_err = std::abs(e - target);
      best = mid;
    }
    if (best_err < 1e-12) break;
    (e < target ? lo : hi) = mid;
  }
  if (best_err > options.tolerance) throw unreachable("bisection did not converge");
  result.sorter_visibility = best;
  return result;
}

CountMatrix monte_carlo_counts(const CountMatrix& m, long long shots_per_input, std::uint64_t seed) {
  if (shots_per_input < 1) throw std::invalid_argument("shots per input must be >= 1");
  if (m.form() != CountForm::Probability) throw std::invalid_argument("monte_carlo_counts needs probabilities");

  const int d = m.dim().value();
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(d, d);
  for (int r = 0; r < d; ++r) {
    std::mt19937_64 rng(splitmix64(seed + static_cast<std::uint64_t>(r + 1) * 0x9E3779B97F4A7C15ULL));
    const double total = m.values().row(r).sum();
    for (long long s = 0; s < shots_per_input; ++s) {
      const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
      double running = 0.0;
      int pick = d - 1;
      for (int j = 0; j < d; ++j) {
        running += m(r, j);
        if (u < running) {
          pick = j;
          break;
        }
      }
      // Zero-probability trailing columns never absorb rounding slack.
      while (pick > 0 && m(r, pick) == 0.0) --pick;
      counts(r, pick) += 1.0;
    }
  }
  return CountMatrix(m.map(), std::move(counts), CountForm::Counts);
}

}  // namespace qudit::optics
