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

#include "qudit/cli.hpp"

#include "qudit/core.hpp"
#include "qudit/errors.hpp"
#include "qudit/io.hpp"
#include "qudit/optics.hpp"
#include "qudit/weyl.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace qudit::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  int dim = 4;
  std::string gate;
  long long power = 1;
  double visibility = 1.0;
  long long shots = 0;
  std::uint64_t seed = 0;
  std::string format = "text";
  bool verify = false;
  std::string in;
  std::string out;
  std::string synth_mode;
  std::optional<double> calibrate;
};

std::string format_complex(Complex z) {
  char buf[64];
  const double re = std::abs(z.real()) < 5e-13 ? 0.0 : z.real();
  const double im = std::abs(z.imag()) < 5e-13 ? 0.0 : z.imag();
  std::snprintf(buf, sizeof buf, "%8.4f%+.4fi", re, im);
  return buf;
}

std::string matrix_text(const GateMatrix& g) {
  std::ostringstream os;
  for (int r = 0; r < g.dim().value(); ++r) {
    for (int c = 0; c < g.dim().value(); ++c) os << (c ? "  " : "") << format_complex(g(r, c));
    os << '\n';
  }
  return os.str();
}

std::string coefficients_text(const WeylCoefficients& h) {
  std::ostringstream os;
  os << "h(l, m) multiplying X^l Z^m\n";
  for (int l = 0; l < h.dim().value(); ++l) {
    for (int m = 0; m < h.dim().value(); ++m) os << (m ? "  " : "") << format_complex(h(l, m));
    os << '\n';
  }
  return os.str();
}

// Rows and columns labelled by OAM, one shade glyph per cell.
std::string heatmap_text(const optics::CountMatrix& m) {
  static constexpr char kShades[] = " .:-=+*#%@";
  const std::vector<int> labels = m.map().oam_labels();
  std::ostringstream os;
  char buf[64];
  os << "in\\out";
  for (int l : labels) {
    std::snprintf(buf, sizeof buf, "%10d", l);
    os << buf;
  }
  os << '\n';
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%6d", labels[i]);
    os << buf;
    const double total = m.values().row(static_cast<Eigen::Index>(i)).sum();
    for (std::size_t j = 0; j < labels.size(); ++j) {
      const double v = m(static_cast<int>(i), static_cast<int>(j));
      const double p = total > 0.0 ? v / total : 0.0;
      const int shade = std::clamp(static_cast<int>(std::lround(p * 9.0)), 0, 9);
      if (m.form() == optics::CountForm::Counts) {
        std::snprintf(buf, sizeof buf, "%8lld %c", static_cast<long long>(std::llround(v)), kShades[shade]);
      } else {
        std::snprintf(buf, sizeof buf, "%8.4f %c", v, kShades[shade]);
      }
      os << buf;
    }
    os << '\n';
  }
  return os.str();
}

void emit(const Options& opt, const std::string& payload, std::ostream& out) {
  if (opt.out.empty()) {
    out << payload;
    return;
  }
  std::ofstream f(opt.out, std::ios::binary);
  if (!f) throw FormatError("out", "cannot write " + opt.out);
  f << payload;
}

io::json load_json(const std::string& path) {
  if (path.empty()) throw UsageError("--in <path> is required");
  return io::parse_json(io::read_file(path));
}

int run_gates(const Options& opt, std::ostream& out) {
  if (opt.format == "csv") throw UsageError("gates supports --format text|json");
  const QuditDim dim(opt.dim);
  GateMatrix base = GateMatrix::identity(dim);
  if (opt.gate == "X") {
    base = make_x(dim);
  } else if (opt.gate == "Z") {
    base = make_z(dim);
  } else if (opt.gate == "Y") {
    base = make_y(dim);
  } else {
    throw UsageError("gates: --gate must be X, Z or Y");
  }
  const GateMatrix g = gate_power(base, opt.power);
  emit(opt, opt.format == "json" ? io::matrix_to_json(g).dump() + "\n" : matrix_text(g), out);
  return kOk;
}

int run_synth(const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.format == "csv") throw UsageError("synth supports --format text|json");
  const bool json = opt.format == "json";

  if (opt.synth_mode == "random-unitary") {
    const QuditDim dim(opt.dim);
    const GateMatrix u = exp_i_hermitian(hermitian_from_coeffs(random_hermitian_coefficients(dim, opt.seed)));
    emit(opt, json ? io::matrix_to_json(u).dump() + "\n" : matrix_text(u), out);
    return kOk;
  }
  if (opt.synth_mode == "decompose") {
    const GateMatrix u = io::matrix_from_json(load_json(opt.in));
    const WeylCoefficients h = decompose(u);
    emit(opt, json ? io::coefficients_to_json(h).dump() + "\n" : coefficients_text(h), out);
    if (opt.verify) {
      const double residual = frobenius_distance(reconstruct(h), u);
      err << "verify: ||reconstruct(decompose(U)) - U||_F = " << residual << '\n';
      if (!(residual < 1e-10)) throw NumericError("round trip residual exceeds 1e-10");
    }
    return kOk;
  }
  if (opt.synth_mode == "reconstruct") {
    const WeylCoefficients h = io::coefficients_from_json(load_json(opt.in));
    const GateMatrix u = reconstruct(h);
    emit(opt, json ? io::matrix_to_json(u).dump() + "\n" : matrix_text(u), out);
    if (opt.verify) {
      const double residual = (decompose(u).table() - h.table()).norm();
      err << "verify: ||decompose(reconstruct(h)) - h||_F = " << residual << '\n';
      if (!(residual < 1e-10)) throw NumericError("round trip residual exceeds 1e-10");
    }
    return kOk;
  }
  throw UsageError("synth: mode must be decompose, reconstruct or random-unitary");
}

std::optional<optics::GateKind> parse_kind(const std::string& gate) {
  if (gate == "X") return optics::GateKind::X;
  if (gate == "X2") return optics::GateKind::X2;
  if (gate == "Xdg") return optics::GateKind::Xdagger;
  return std::nullopt;
}

int run_sim(const Options& opt, std::ostream& out, std::ostream& err) {
  std::optional<optics::GateKind> kind;
  if (!opt.gate.empty()) {
    kind = parse_kind(opt.gate);
    if (!kind) throw UsageError("sim: --gate must be X, X2 or Xdg");
  }
  if (!kind && opt.in.empty()) throw UsageError("sim: give --gate or --in <circuit.json>");
  if (!(opt.visibility >= 0.0 && opt.visibility <= 1.0)) throw UsageError("sim: --visibility must lie in [0, 1]");
  if (opt.shots < 0) throw UsageError("sim: --shots must be >= 0");
  if (opt.calibrate && !kind) throw UsageError("sim: --calibrate needs --gate");

  optics::NoiseParams noise;
  noise.sorter_visibility = opt.visibility;
  if (opt.calibrate) noise = optics::calibrate_visibility(*kind, *opt.calibrate);

  const optics::OpticalCircuit circuit = opt.in.empty()
                                             ? optics::build_gate_circuit(*kind, experiment_subspace())
                                             : io::circuit_from_json(load_json(opt.in));

  const optics::CountMatrix probabilities = optics::correlation_matrix(circuit, noise);
  const optics::CountMatrix shown =
      opt.shots > 0 ? optics::monte_carlo_counts(probabilities, opt.shots, opt.seed) : probabilities;

  std::optional<optics::EfficiencyReport> eff;
  if (kind) {
    if (circuit.dim().value() != 4) throw UsageError("sim: --gate expects a 4-dimensional circuit");
    eff = optics::efficiency(shown, optics::expected_permutation(*kind, circuit.dim()));
  }
  std::optional<double> coherence;
  if (kind == optics::GateKind::X) coherence = optics::superposition_visibility(circuit, noise);

  const std::vector<int> labels = circuit.map().oam_labels();
  if (opt.format == "json") {
    io::json j = {{"visibility", noise.sorter_visibility},
                  {"throughput", noise.throughput},
                  {"shots", opt.shots},
                  {"seed", opt.seed},
                  {"matrix", io::count_matrix_to_json(shown)}};
    if (kind) j["gate"] = optics::to_string(*kind);
    if (eff) j["efficiency"] = {{"per_input", eff->per_input}, {"mean", eff->mean}};
    if (coherence) j["superposition_visibility"] = *coherence;
    emit(opt, j.dump() + "\n", out);
    return kOk;
  }

  std::ostringstream report;
  char buf[128];
  std::snprintf(buf, sizeof buf, "visibility %.6f\n", noise.sorter_visibility);
  report << buf;
  if (eff) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      std::snprintf(buf, sizeof buf, "efficiency |%d>  %.4f\n", labels[i], eff->per_input[i]);
      report << buf;
    }
    std::snprintf(buf, sizeof buf, "mean efficiency  %.4f\n", eff->mean);
    report << buf;
  }
  if (coherence) {
    std::snprintf(buf, sizeof buf, "superposition visibility  %.4f\n", *coherence);
    report << buf;
  }

  if (opt.format == "csv") {
    emit(opt, io::count_matrix_to_csv(shown), out);
    (opt.out.empty() ? err : out) << report.str();
    return kOk;
  }
  std::ostringstream text;
  text << (kind ? std::string(optics::to_string(*kind)) + " gate, " : std::string("circuit, "))
       << (opt.shots > 0 ? std::to_string(opt.shots) + " shots per input, seed " + std::to_string(opt.seed)
                         : std::string("analytic probabilities"))
       << "\n"
       << heatmap_text(shown) << report.str();
  emit(opt, text.str(), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Generalized Pauli gates, Weyl synthesis and OAM circuit simulation", "quditgates"};
  app.require_subcommand(1);

  const std::vector<std::string> formats{"text", "json", "csv"};

  auto* gates = app.add_subcommand("gates", "Print X, Z or Y raised to an integer power");
  gates->add_option("--dim", opt.dim, "Dimension d")->check(CLI::Range(2, 64));
  gates->add_option("--gate", opt.gate, "X, Z or Y")->required();
  gates->add_option("--power", opt.power, "Integer power (negative = inverse)");
  gates->add_option("--format", opt.format)->check(CLI::IsMember(formats));
  gates->add_option("--out", opt.out, "Write to file instead of stdout");

  auto* synth = app.add_subcommand("synth", "Weyl decomposition and unitary synthesis");
  synth->add_option("mode", opt.synth_mode, "decompose | reconstruct | random-unitary")
      ->required()
      ->check(CLI::IsMember({"decompose", "reconstruct", "random-unitary"}));
  synth->add_option("--in", opt.in, "Input matrix or coefficient JSON");
  synth->add_option("--dim", opt.dim, "Dimension for random-unitary")->check(CLI::Range(2, 64));
  synth->add_option("--seed", opt.seed);
  synth->add_flag("--verify", opt.verify, "Check the round trip to 1e-10");
  synth->add_option("--format", opt.format)->check(CLI::IsMember(formats));
  synth->add_option("--out", opt.out);

  auto* sim = app.add_subcommand("sim", "Simulate an OAM gate circuit");
  sim->add_option("--gate", opt.gate, "X, X2 or Xdg");
  sim->add_option("--in", opt.in, "Circuit description JSON");
  sim->add_option("--visibility", opt.visibility, "Sorter visibility V in [0, 1]");
  sim->add_option("--calibrate", opt.calibrate, "Choose V to hit this mean efficiency");
  sim->add_option("--shots", opt.shots, "Samples per input (0 = analytic)");
  sim->add_option("--seed", opt.seed);
  sim->add_option("--format", opt.format)->check(CLI::IsMember(formats));
  sim->add_option("--out", opt.out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (gates->parsed()) return run_gates(opt, out);
    if (synth->parsed()) return run_synth(opt, out, err);
    return run_sim(opt, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const FormatError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputFile;
  } catch (const CircuitError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputFile;
  } catch (const DimensionMismatch& e) {
    err << "input error: " << e.what() << '\n';
    return kInputFile;
  } catch (const CalibrationError& e) {
    err << "calibration failed: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  }
}

}  // namespace qudit::cli
