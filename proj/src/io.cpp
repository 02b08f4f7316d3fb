#include "qchan/io.hpp"

namespace qchan {

namespace {

const char* status_name(EbStatus s) {
  switch (s) {
    case EbStatus::EB:
      return "EB";
    case EbStatus::NotEB:
      return "NotEB";
    default:
      return "Unknown";
  }
}

EbStatus status_from_name(const std::string& s) {
  if (s == "EB") return EbStatus::EB;
  if (s == "NotEB") return EbStatus::NotEB;
  if (s == "Unknown") return EbStatus::Unknown;
  throw Error("unknown verdict status '" + s + "'");
}

const char* tri_name(Tri t) {
  switch (t) {
    case Tri::yes:
      return "true";
    case Tri::no:
      return "false";
    default:
      return "unchecked";
  }
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw Error("complex entry must be a [re, im] pair of numbers");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json vector_to_json(const ComplexVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

ComplexVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw Error("vector must be an array");
  ComplexVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw Error("matrix must be a nonempty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  if (!j[0].is_array() || j[0].empty()) {
    throw Error("matrix row must be a nonempty array");
  }
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols) {
      throw Error("matrix row " + std::to_string(r) + " has inconsistent length");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

Json channel_to_json(const Channel& e) {
  Json kraus = Json::array();
  for (const auto& k : e.kraus()) kraus.push_back(matrix_to_json(k));
  return Json{{"d", e.dim()}, {"kraus", std::move(kraus)}};
}

Channel channel_from_json(const Json& j, Tolerance tol) {
  if (!j.is_object() || !j.contains("d") || !j.contains("kraus")) {
    throw Error("channel object needs fields \"d\" and \"kraus\"");
  }
  if (!j["d"].is_number_integer()) throw Error("field \"d\" must be an integer");
  const int d = j["d"].get<int>();
  if (d < 1) throw Error("field \"d\" must be positive");
  if (!j["kraus"].is_array() || j["kraus"].empty()) {
    throw Error("field \"kraus\" must be a nonempty array");
  }
  std::vector<ComplexMatrix> kraus;
  for (std::size_t i = 0; i < j["kraus"].size(); ++i) {
    ComplexMatrix k = matrix_from_json(j["kraus"][i]);
    if (k.rows() != d || k.cols() != d) {
      throw Error("kraus[" + std::to_string(i) + "] is not d x d");
    }
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus), tol);
}

Json choi_to_json(const ChoiMatrix& c) {
  return Json{{"d_in", c.d_in},
              {"d_out", c.d_out},
              {"matrix", matrix_to_json(c.matrix)},
              {"normalized", c.normalized}};
}

ChoiMatrix choi_from_json(const Json& j) {
  for (const char* field : {"d_in", "d_out", "matrix", "normalized"}) {
    if (!j.contains(field)) {
      throw Error(std::string("choi object needs field \"") + field + "\"");
    }
  }
  ChoiMatrix c;
  c.d_in = j["d_in"].get<int>();
  c.d_out = j["d_out"].get<int>();
  c.matrix = matrix_from_json(j["matrix"]);
  c.normalized = j["normalized"].get<bool>();
  const auto n = static_cast<Eigen::Index>(c.d_in) * c.d_out;
  if (c.d_in < 1 || c.d_out < 1 || c.matrix.rows() != n || c.matrix.cols() != n) {
    throw Error("choi matrix size does not match d_in * d_out");
  }
  return c;
}

Channel channel_from_any_json(const Json& j, Tolerance tol) {
  if (j.is_object() && j.contains("kraus")) return channel_from_json(j, tol);
  if (j.is_object() && j.contains("matrix")) {
    return kraus_from_choi(choi_from_json(j), tol);
  }
  throw Error("input is neither a channel (\"kraus\") nor a Choi (\"matrix\") object");
}

Json algebra_to_json(const StarAlgebra& a) {
  Json basis = Json::array();
  for (const auto& b : a.basis()) basis.push_back(matrix_to_json(b));
  return Json{{"d", a.ambient_dim()},
              {"dim", a.dim()},
              {"basis", std::move(basis)},
              {"abelian", a.abelian()}};
}

Json spectral_to_json(const SpectralData& s) {
  Json ev = Json::array();
  for (const auto& lambda : s.eigenvalues) ev.push_back(complex_to_json(lambda));
  return Json{{"eigenvalues", std::move(ev)},
              {"peripheral_count", s.peripheral_count()},
              {"peripheral_tol", s.peripheral_tol}};
}

Json certificate_to_json(const Certificate& c) {
  if (const auto* g = std::get_if<GurvitsBallCert>(&c)) {
    return Json{{"type", "gurvits_ball"},
                {"distance_sq", g->distance_sq},
                {"radius_sq", g->radius_sq}};
  }
  if (const auto* a = std::get_if<AbelianRangeCert>(&c)) {
    Json pairs = Json::array();
    for (std::size_t i = 0; i < a->holevo.r.size(); ++i) {
      pairs.push_back(Json{{"R", matrix_to_json(a->holevo.r[i])},
                           {"Q", matrix_to_json(a->holevo.q[i])}});
    }
    return Json{{"type", "abelian_range"}, {"holevo", std::move(pairs)}};
  }
  if (const auto* x = std::get_if<ExactSmallDimCert>(&c)) {
    return Json{{"type", "exact_small_dim"},
                {"d_in", x->d_in},
                {"d_out", x->d_out},
                {"ppt", x->ppt}};
  }
  const auto& s = std::get<StormerMixCert>(c);
  return Json{{"type", "stormer_mix"},
              {"n", s.n},
              {"d", s.d},
              {"a", s.a},
              {"bound", s.bound}};
}

Certificate certificate_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "gurvits_ball") {
    return GurvitsBallCert{j.at("distance_sq").get<double>(),
                           j.at("radius_sq").get<double>()};
  }
  if (type == "abelian_range") {
    AbelianRangeCert cert;
    for (const auto& pair : j.at("holevo")) {
      cert.holevo.r.push_back(matrix_from_json(pair.at("R")));
      cert.holevo.q.push_back(matrix_from_json(pair.at("Q")));
    }
    return cert;
  }
  if (type == "exact_small_dim") {
    return ExactSmallDimCert{j.at("d_in").get<int>(), j.at("d_out").get<int>(),
                             j.at("ppt").get<bool>()};
  }
  if (type == "stormer_mix") {
    return StormerMixCert{j.at("n").get<int>(), j.at("d").get<int>(),
                          j.at("a").get<double>(), j.at("bound").get<double>()};
  }
  throw Error("unknown certificate type '" + type + "'");
}

Json witness_to_json(const Witness& w) {
  if (const auto* npt = std::get_if<NptWitness>(&w)) {
    return Json{{"type", "npt"},
                {"eigenvalue", npt->eigenvalue},
                {"eigenvector", vector_to_json(npt->eigenvector)}};
  }
  const auto& md = std::get<NonAbelianMdWitness>(w);
  return Json{{"type", "non_abelian_md"},
              {"i", md.i},
              {"j", md.j},
              {"commutator_norm", md.commutator_norm},
              {"x", matrix_to_json(md.x)},
              {"y", matrix_to_json(md.y)}};
}

Witness witness_from_json(const Json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "npt") {
    return NptWitness{j.at("eigenvalue").get<double>(),
                      vector_from_json(j.at("eigenvector"))};
  }
  if (type == "non_abelian_md") {
    return NonAbelianMdWitness{
        j.at("i").get<int>(),          j.at("j").get<int>(),
        j.at("commutator_norm").get<double>(), matrix_from_json(j.at("x")),
        matrix_from_json(j.at("y"))};
  }
  throw Error("unknown witness type '" + type + "'");
}

Json verdict_to_json(const SeparabilityVerdict& v) {
  Json out{{"status", status_name(v.status)}};
  if (v.certificate) out["certificate"] = certificate_to_json(*v.certificate);
  if (v.witness) out["witness"] = witness_to_json(*v.witness);
  return out;
}

SeparabilityVerdict verdict_from_json(const Json& j) {
  SeparabilityVerdict v;
  v.status = status_from_name(j.at("status").get<std::string>());
  if (j.contains("certificate")) {
    v.certificate = certificate_from_json(j["certificate"]);
  }
  if (j.contains("witness")) v.witness = witness_from_json(j["witness"]);
  return v;
}

Json flags_to_json(const ChannelFlags& f) {
  return Json{{"cp", tri_name(f.cp)},
              {"tp", tri_name(f.tp)},
              {"unital", tri_name(f.unital)}};
}

Json index_result_to_json(const IndexResult& r) {
  Json log = Json::array();
  for (const auto& entry : r.log) {
    log.push_back(Json{{"n", entry.n}, {"status", status_name(entry.status)}});
  }
  Json out{{"found", r.found}, {"cap", r.cap}, {"log", std::move(log)}};
  if (r.found) {
    out["n"] = r.n;
    if (r.certificate) out["certificate"] = certificate_to_json(*r.certificate);
  }
  return out;
}

Json md_chain_to_json(const MdChain& chain) {
  Json dims = Json::array();
  for (const auto& a : chain.algebras) dims.push_back(a.dim());
  return Json{{"dims", std::move(dims)},
              {"kappa", chain.kappa},
              {"stabilized", algebra_to_json(chain.stabilized)}};
}

Json block_decomposition_to_json(const BlockDecomposition& dec) {
  Json projections = Json::array();
  for (const auto& p : dec.projections) projections.push_back(matrix_to_json(p));
  Json blocks = Json::array();
  for (const auto& b : dec.blocks) blocks.push_back(channel_to_json(b));
  return Json{{"kappa", dec.kappa},
              {"projections", std::move(projections)},
              {"sigma", dec.sigma},
              {"m", dec.m},
              {"n", dec.n},
              {"blocks", std::move(blocks)},
              {"residual", dec.residual},
              {"ppt", dec.ppt},
              {"ppt_min_eigenvalue", dec.ppt_min_eigenvalue}};
}

Json asymptotic_to_json(const AsymptoticClassification& c) {
  return Json{
      {"asymptotically_eb", c.asymptotically_eb},
      {"stabilized_dim", c.stabilized_dim},
      {"abelian", c.abelian},
      {"peripheral_projection_verdict",
       verdict_to_json(c.peripheral_projection_verdict)}};
}

Json densify_to_json(const DensifyResult& r) {
  return Json{{"base", channel_to_json(r.mix.base)},
              {"delta", r.mix.delta},
              {"a", r.mix.a},
              {"mix", channel_to_json(r.mix.as_channel())},
              {"predicted_n", r.predicted_n},
              {"distance", r.distance}};
}

Json make_report(const Channel& e) {
  return Json{{"schema", "qchan-report/1"}, {"channel", channel_to_json(e)}};
}

}  // namespace qchan
