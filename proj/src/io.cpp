#include "povm/io.hpp"

#include <fstream>
#include <sstream>

namespace povm::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Real number(const Json& j) {
  if (!j.is_number()) parse_error("expected a number, got " + j.dump());
  return j.get<Real>();
}

Complex complex_entry(const Json& j) {
  if (j.is_number()) return {j.get<Real>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number(j[0]), number(j[1])};
  parse_error("complex entry must be [re, im] or a number, got " + j.dump());
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Eigen::Index expect_dim(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<long>() < 1) parse_error("\"dim\" must be a positive integer");
  return d.get<Eigen::Index>();
}

void check_square(const CMatrix& m, Eigen::Index d, const std::string& what) {
  if (m.rows() != d || m.cols() != d) {
    std::ostringstream os;
    os << what << " is " << m.rows() << "x" << m.cols() << ", expected " << d << "x" << d;
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

}  // namespace

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const RMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const RVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

CMatrix complex_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    parse_error("matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      parse_error("matrix rows have unequal lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_entry(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

RMatrix real_matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    parse_error("matrix must be a non-empty array of rows");
  }
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  RMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      parse_error("matrix rows have unequal lengths");
    }
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = number(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

RVector real_vector_from_json(const Json& j) {
  if (!j.is_array()) parse_error("expected an array of numbers");
  RVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i]);
  return v;
}

Json to_json(const Measurement& c) {
  Json out;
  out["dim"] = c.dim();
  Json elements = Json::array();
  for (std::size_t i = 0; i < c.size(); ++i) elements.push_back(to_json(c.element(i)));
  out["elements"] = std::move(elements);
  if (c.has_kraus()) {
    Json kraus = Json::array();
    for (const auto& outcome : c.kraus()) {
      Json ks = Json::array();
      for (const auto& k : outcome) ks.push_back(to_json(k));
      kraus.push_back(std::move(ks));
    }
    out["kraus"] = std::move(kraus);
  }
  return out;
}

Measurement measurement_from_json(const Json& j, const Tolerances& tol) {
  const Eigen::Index d = expect_dim(j);
  const Json& el = field(j, "elements");
  if (!el.is_array() || el.empty()) parse_error("\"elements\" must be a non-empty array");
  std::vector<CMatrix> elements;
  for (const auto& e : el) {
    elements.push_back(complex_matrix_from_json(e));
    check_square(elements.back(), d, "POVM element");
  }
  std::optional<KrausSet> kraus;
  if (j.contains("kraus") && !j.at("kraus").is_null()) {
    const Json& kj = j.at("kraus");
    if (!kj.is_array()) parse_error("\"kraus\" must be an array of per-outcome lists");
    KrausSet ks;
    for (const auto& outcome : kj) {
      if (!outcome.is_array()) parse_error("each Kraus entry must be a list of matrices");
      std::vector<CMatrix> list;
      for (const auto& k : outcome) list.push_back(complex_matrix_from_json(k));
      ks.push_back(std::move(list));
    }
    kraus = std::move(ks);
  }
  return validate_measurement(elements, kraus, tol);
}

Json to_json(const DensityMatrix& rho) {
  return Json{{"dim", rho.dim()}, {"rho", to_json(rho.matrix())}};
}

DensityMatrix state_from_json(const Json& j, const Tolerances& tol) {
  const Eigen::Index d = expect_dim(j);
  const CMatrix rho = complex_matrix_from_json(field(j, "rho"));
  check_square(rho, d, "density matrix");
  return DensityMatrix::from(rho, tol);
}

Json to_json(const Subspace& g) {
  Json basis = Json::array();
  for (Eigen::Index k = 0; k < g.dim(); ++k) {
    Json v = Json::array();
    for (Eigen::Index r = 0; r < g.ambient_dim(); ++r) v.push_back(complex_to_json(g.basis()(r, k)));
    basis.push_back(std::move(v));
  }
  return Json{{"dim", g.ambient_dim()}, {"basis", std::move(basis)}};
}

Subspace subspace_from_json(const Json& j, const Tolerances& tol) {
  const Eigen::Index d = expect_dim(j);
  const Json& b = field(j, "basis");
  if (!b.is_array() || b.empty()) parse_error("\"basis\" must be a non-empty array of vectors");
  CMatrix basis(d, static_cast<Eigen::Index>(b.size()));
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (!b[k].is_array() || static_cast<Eigen::Index>(b[k].size()) != d) {
      throw Error(ErrorCode::DimensionMismatch, "basis vector length differs from \"dim\"");
    }
    for (Eigen::Index r = 0; r < d; ++r) {
      basis(r, static_cast<Eigen::Index>(k)) = complex_entry(b[k][static_cast<std::size_t>(r)]);
    }
  }
  return Subspace::from_basis(basis, tol);
}

Json to_json(const WeightedDistribution& w) {
  return Json{{"probs", to_json(w.probs())}, {"volumes", to_json(w.volumes())}};
}

WeightedDistribution distribution_from_json(const Json& j) {
  return WeightedDistribution::from(real_vector_from_json(field(j, "probs")),
                                    real_vector_from_json(field(j, "volumes")));
}

Json to_json(const JointDistribution& p) { return Json{{"matrix", to_json(p.matrix())}}; }

JointDistribution joint_from_json(const Json& j) {
  return JointDistribution::from(real_matrix_from_json(field(j, "matrix")));
}

Json to_json(const EntropyReport& r) {
  return Json{{"p", to_json(r.probs)},
              {"V", to_json(r.volumes)},
              {"S_obs", r.s_obs},
              {"S_vN", r.s_vn},
              {"ln_V_total", r.ln_vtot},
              {"D_KL_to_uniform", r.d_kl_to_uniform}};
}

Json to_json(const OutcomeSet& s) { return Json(s.indices); }

Json to_json(const CoarsenessCertificate& c) {
  Json out;
  out["feasible"] = c.feasible();
  out["verdict"] = to_string(c.verdict);
  out["P"] = c.witness ? to_json(c.witness->matrix()) : Json(nullptr);
  out["residual"] = c.residual;
  out["phase1_optimum"] = c.phase1_optimum;
  out["volume_slack"] = c.volume_slack ? to_json(*c.volume_slack) : Json(nullptr);
  if (c.coarse_outcomes) out["coarse_outcomes"] = to_json(*c.coarse_outcomes);
  if (c.fine_outcomes) out["fine_outcomes"] = to_json(*c.fine_outcomes);
  if (c.extension) out["extension"] = to_json(c.extension->matrix());
  return out;
}

Json to_json(const ComposedMeasurement& c) {
  Json out = to_json(c.measurement);
  Json labels = Json::array();
  for (const auto& [i, j] : c.labels) labels.push_back(Json::array({i, j}));
  Json dropped = Json::array();
  for (const auto& [i, j] : c.dropped) dropped.push_back(Json::array({i, j}));
  out["labels"] = std::move(labels);
  out["dropped"] = std::move(dropped);
  return out;
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    parse_error(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
  out << dump(j, 2) << '\n';
}

std::string dump(const Json& j, int indent) { return j.dump(indent); }

}  // namespace povm::io
