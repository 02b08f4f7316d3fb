// qchan: analyze iterated quantum channels on d x d matrix algebras.
//
// Subcommands read a channel (or Choi) JSON object from --in (default
// stdin), or construct one via --family, and write a report JSON (or a
// fixed-width text summary) to --out (default stdout). Reports embed the
// channel and all certificate/witness evidence so `qchan verify-report`
// can re-validate them offline.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "qchan/io.hpp"

namespace {

using namespace qchan;

struct CommonOpts {
  std::string in = "-";
  std::string out = "-";
  double tol_eps = 1e-8;
  int cap = 64;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string family;
  int d = 2;
  double lambda = 0.5;
  double delta = 0.1;
  int m = 4;

  Tolerance tol() const { return Tolerance{tol_eps}; }
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_input = true) {
  if (with_input) {
    cmd->add_option("--in", opts.in, "input path, '-' for stdin");
    cmd->add_option("--family", opts.family,
                    "generate the input channel instead of reading it");
    cmd->add_option("--d", opts.d, "dimension for generated families");
    cmd->add_option("--lambda", opts.lambda, "schur_lambda parameter");
    cmd->add_option("--m", opts.m, "number of unitaries for random_unital");
    cmd->add_option("--seed", opts.seed, "RNG seed for random families");
  }
  cmd->add_option("--out", opts.out, "output path, '-' for stdout");
  cmd->add_option("--tol", opts.tol_eps, "relative tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", opts.format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
}

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream f(path);
  if (!f) throw Error("cannot open input file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void write_all(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error("cannot open output file '" + path + "'");
  f << content;
}

Json load_json(const std::string& path) {
  return Json::parse(read_all(path));
}

Channel load_channel(const CommonOpts& opts) {
  if (!opts.family.empty()) {
    FamilySpec spec;
    spec.family = opts.family;
    spec.d = opts.d;
    spec.lambda = opts.lambda;
    spec.delta = opts.delta;
    spec.m = opts.m;
    spec.seed = opts.seed;
    if (opts.family == "schur" || opts.family == "unitary") {
      Json j = load_json(opts.in);
      spec.matrix = matrix_from_json(j.is_object() ? j.at("matrix") : j);
    }
    return generate(spec, opts.tol());
  }
  return channel_from_any_json(load_json(opts.in), opts.tol());
}

std::string render_text(const Json& report) {
  std::ostringstream out;
  out << std::left;
  std::function<void(const std::string&, const Json&)> walk =
      [&](const std::string& prefix, const Json& node) {
        if (node.is_object()) {
          for (auto it = node.begin(); it != node.end(); ++it) {
            if (it.key() == "channel" || it.key() == "kraus" ||
                it.key() == "basis" || it.key() == "matrix" ||
                it.key() == "projections" || it.key() == "blocks" ||
                it.key() == "eigenvector" || it.key() == "holevo" ||
                it.key() == "x" || it.key() == "y" || it.key() == "base" ||
                it.key() == "mix") {
              continue;  // bulk payloads stay in the JSON format
            }
            walk(prefix.empty() ? it.key() : prefix + "." + it.key(),
                 it.value());
          }
        } else {
          out << "  " << prefix;
          for (std::size_t i = prefix.size(); i < 36; ++i) out << ' ';
          out << node.dump() << "\n";
        }
      };
  walk("", report);
  return out.str();
}

void emit(const CommonOpts& opts, const Json& report) {
  if (opts.format == "text") {
    write_all(opts.out, render_text(report));
  } else {
    write_all(opts.out, report.dump(2) + "\n");
  }
}

void cmd_generate(const CommonOpts& opts) {
  if (opts.family.empty()) throw Error("generate: --family is required");
  Channel e = load_channel(opts);
  emit(opts, channel_to_json(e));
}

void cmd_verify(const CommonOpts& opts) {
  Channel e = load_channel(opts);
  Json report = make_report(e);
  report["flags"] = flags_to_json(verify(e, opts.tol()));
  emit(opts, report);
}

void cmd_choi(const CommonOpts& opts) {
  Channel e = load_channel(opts);
  emit(opts, choi_to_json(choi_of(e)));
}

void cmd_ppt(const CommonOpts& opts) {
  Channel e = load_channel(opts);
  auto [ppt, min_ev] = is_ppt(e, opts.tol());
  Json report = make_report(e);
  report["ppt"] = Json{{"is_ppt", ppt}, {"min_eigenvalue", min_ev}};
  emit(opts, report);
}

void cmd_eb(const CommonOpts& opts) {
  Channel e = load_channel(opts);
  Json report = make_report(e);
  report["eb"] = verdict_to_json(eb_verdict(e, opts.tol()));
  emit(opts, report);
}

void cmd_md_chain(const CommonOpts& opts) {
  Channel e = load_channel(opts);
  Json report = make_report(e);
  report["md_chain"] = md_chain_to_json(md_chain(e, 0, opts.tol()));
  emit(opts, report);
}

void cmd_spectrum(const CommonOpts& opts) {
  Channel e = load_channel(opts);
  Json report = make_report(e);
  report["spectrum"] = spectral_to_json(spectrum(e));
  emit(opts, report);
}

void cmd_index(const CommonOpts& opts) {
  Channel e = load_channel(opts);
  Json report = make_report(e);
  report["index"] = index_result_to_json(
      separability_index(e, opts.cap, opts.tol()));
  emit(opts, report);
}

void cmd_decompose(const CommonOpts& opts) {
  Channel e = load_channel(opts);
  Json report = make_report(e);
  report["decomposition"] =
      block_decomposition_to_json(block_decompose(e, opts.tol()));
  emit(opts, report);
}

void cmd_classify(const CommonOpts& opts) {
  Channel e = load_channel(opts);
  AsymptoticClassification c = classify_asymptotic(e, opts.tol());
  Json report = make_report(e);
  report["asymptotic"] = asymptotic_to_json(c);
  if (c.projection) {
    report["asymptotic"]["peripheral_projection"] =
        channel_to_json(*c.projection);
  }
  emit(opts, report);
}

void cmd_densify(const CommonOpts& opts) {
  Channel e = load_channel(opts);
  DensifyResult r = densify(e, opts.delta, opts.tol());
  Json report = make_report(e);
  report["densify"] = densify_to_json(r);
  if (auto cert = stormer_mix_certificate(r.mix, r.predicted_n)) {
    report["densify"]["stormer_certificate"] = certificate_to_json(*cert);
  }
  emit(opts, report);
}

void cmd_verify_report(const CommonOpts& opts) {
  Json report = load_json(opts.in);
  if (!report.is_object() || report.value("schema", "") != "qchan-report/1") {
    throw Error("verify-report: not a qchan-report/1 object");
  }
  Channel e = channel_from_json(report.at("channel"), opts.tol());
  Json checks = Json::array();
  bool all_ok = true;
  auto record = [&](const std::string& name, bool ok) {
    checks.push_back(Json{{"check", name}, {"ok", ok}});
    all_ok = all_ok && ok;
  };

  if (report.contains("ppt")) {
    auto [ppt, min_ev] = is_ppt(e, opts.tol());
    record("ppt.is_ppt", ppt == report["ppt"].at("is_ppt").get<bool>());
    record("ppt.min_eigenvalue",
           std::abs(min_ev - report["ppt"].at("min_eigenvalue").get<double>()) <
               1e-6);
  }
  if (report.contains("eb")) {
    SeparabilityVerdict v = verdict_from_json(report["eb"]);
    if (v.status == EbStatus::EB) {
      record("eb.certificate",
             v.certificate && validate_certificate(*v.certificate, e, opts.tol()));
    } else if (v.status == EbStatus::NotEB) {
      record("eb.witness",
             v.witness && validate_witness(*v.witness, e, opts.tol()));
    } else {
      record("eb.unknown", !v.certificate && !v.witness);
    }
  }
  if (report.contains("index")) {
    const Json& idx = report["index"];
    if (idx.value("found", false)) {
      Certificate cert = certificate_from_json(idx.at("certificate"));
      const int n = idx.at("n").get<int>();
      if (std::holds_alternative<StormerMixCert>(cert)) {
        record("index.certificate", validate_certificate(cert, e, opts.tol()));
      } else {
        record("index.certificate",
               validate_certificate(cert, power(e, n, opts.tol()), opts.tol()));
      }
    }
  }
  if (report.contains("asymptotic")) {
    const Json& asym = report["asymptotic"];
    record("asymptotic.consistency",
           asym.at("asymptotically_eb").get<bool>() ==
               asym.at("abelian").get<bool>());
    if (asym.contains("peripheral_projection")) {
      Channel proj =
          channel_from_json(asym["peripheral_projection"], opts.tol());
      SeparabilityVerdict v =
          verdict_from_json(asym.at("peripheral_projection_verdict"));
      if (v.certificate) {
        record("asymptotic.projection_certificate",
               validate_certificate(*v.certificate, proj, opts.tol()));
      }
    }
  }
  if (report.contains("decomposition")) {
    const Json& dec = report["decomposition"];
    const int d = e.dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    bool proj_ok = true;
    for (const auto& pj : dec.at("projections")) {
      ComplexMatrix p = matrix_from_json(pj);
      proj_ok = proj_ok && (p * p - p).norm() < 1e-6;
      sum += p;
    }
    record("decomposition.projections",
           proj_ok && (sum - ComplexMatrix::Identity(d, d)).norm() < 1e-6);
    record("decomposition.n",
           dec.at("n").get<int>() ==
               dec.at("m").get<int>() * dec.at("kappa").get<int>());
  }

  Json out{{"schema", "qchan-report/1"}, {"valid", all_ok}, {"checks", checks}};
  emit(opts, out);
  if (!all_ok) throw Error("verify-report: validation failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iterated quantum channel analyzer"};
  app.require_subcommand(1);

  CommonOpts opts;
  struct SubSpec {
    const char* name;
    const char* help;
    void (*fn)(const CommonOpts&);
    bool with_input;
  };
  const SubSpec subs[] = {
      {"generate", "construct a named channel family", cmd_generate, true},
      {"verify", "CP/TP/unital flags", cmd_verify, true},
      {"choi", "Choi matrix of the channel", cmd_choi, true},
      {"ppt", "positive partial transpose test", cmd_ppt, true},
      {"eb", "entanglement-breaking verdict with evidence", cmd_eb, true},
      {"md-chain", "multiplicative domain chain and index", cmd_md_chain, true},
      {"spectrum", "superoperator spectrum", cmd_spectrum, true},
      {"index", "index of separability search", cmd_index, true},
      {"decompose", "block decomposition of E^(m kappa)", cmd_decompose, true},
      {"classify", "asymptotic entanglement-breaking classification",
       cmd_classify, true},
      {"densify", "finite-index perturbation (1-delta/2) Phi + (delta/2) Omega",
       cmd_densify, true},
      {"verify-report", "re-validate the evidence inside a report",
       cmd_verify_report, true},
  };

  for (const auto& sub : subs) {
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    add_common(cmd, opts, sub.with_input);
    if (std::string(sub.name) == "index") {
      cmd->add_option("--cap", opts.cap, "largest power to try")
          ->check(CLI::PositiveNumber);
    }
    if (std::string(sub.name) == "densify") {
      cmd->add_option("--delta", opts.delta, "perturbation size in (0, 1]");
    }
    auto fn = sub.fn;
    cmd->callback([&opts, fn]() { fn(opts); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
