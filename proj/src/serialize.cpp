#include "qobjex/serialize.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qobjex/error.hpp"

namespace qobjex {

std::string format_real(double x) {
  char buf[64];
  for (int digits = 15; digits <= 17; ++digits) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

namespace {

Json dims_json(const Dims& dims) {
  Json out = Json::array();
  for (int d : dims) out.push_back(d);
  return out;
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad field \"") + key + "\": " + e.what());
  }
}

}  // namespace

Json to_json(const PureState& psi) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
    re.push_back(psi.amplitudes()(i).real());
    im.push_back(psi.amplitudes()(i).imag());
  }
  return Json{{"kind", "pure"}, {"dims", dims_json(psi.dims())}, {"re", re}, {"im", im}};
}

Json to_json(const DensityMatrix& rho) {
  Json re = Json::array();
  Json im = Json::array();
  const ComplexMatrix& m = rho.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re.push_back(m(r, c).real());
      im.push_back(m(r, c).imag());
    }
  }
  return Json{{"kind", "density"}, {"dims", dims_json(rho.dims())}, {"re", re}, {"im", im}};
}

AnyState state_from_json(const Json& j) {
  const auto kind = field<std::string>(j, "kind");
  const auto dims = field<std::vector<int>>(j, "dims");
  const auto re = field<std::vector<double>>(j, "re");
  const auto im = field<std::vector<double>>(j, "im");
  for (int d : dims) {
    if (d < 1) throw InputError("subsystem dimensions must be positive");
  }
  const std::size_t dim = total_dimension(dims);
  if (re.size() != im.size()) throw InputError("\"re\" and \"im\" differ in length");
  if (kind == "pure") {
    if (re.size() != dim) throw InputError("pure state needs " + std::to_string(dim) + " amplitudes");
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = Complex(re[i], im[i]);
    return PureState(dims, std::move(v));
  }
  if (kind == "density") {
    if (re.size() != dim * dim) throw InputError("density matrix needs " + std::to_string(dim * dim) + " entries");
    const auto n = static_cast<Eigen::Index>(dim);
    ComplexMatrix m(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        const auto i = static_cast<std::size_t>(r * n + c);
        m(r, c) = Complex(re[i], im[i]);
      }
    }
    return DensityMatrix(dims, std::move(m));
  }
  throw InputError("state kind must be \"pure\" or \"density\", got \"" + kind + "\"");
}

DensityMatrix density_from_json(const Json& j) {
  AnyState s = state_from_json(j);
  if (auto* psi = std::get_if<PureState>(&s)) return DensityMatrix::from_pure(*psi);
  return std::get<DensityMatrix>(std::move(s));
}

AnyState read_state_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open state file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError("state file " + path.string() + " is not valid JSON: " + e.what());
  }
  return state_from_json(j);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out.flush()) throw Error("failed writing " + path.string());
}

Json to_json(const EncodingSpec& spec) {
  return Json{{"family", std::string(to_string(spec.family))}, {"k", spec.k}, {"N", spec.N}, {"p", spec.p}};
}

EncodingSpec spec_from_json(const Json& j) {
  EncodingSpec spec;
  spec.family = parse_family(field<std::string>(j, "family"));
  spec.k = field<int>(j, "k");
  spec.N = field<long>(j, "N");
  if (j.contains("p")) spec.p = field<double>(j, "p");
  spec.validate();
  return spec;
}

Json to_json(const FractionMask& mask) { return Json{{"spec", to_json(mask.spec())}, {"positions", mask.positions()}}; }

Json to_json(const MICurve& curve) {
  Json points = Json::array();
  for (const auto& pt : curve.points) {
    points.push_back(Json{{"m", pt.m}, {"f", pt.f}, {"qmi_over_S", pt.qmi_over_S}, {"acc_over_S", pt.acc_over_S}});
  }
  return Json{{"spec", to_json(curve.spec)}, {"acc_is_bound", curve.acc_is_bound}, {"points", points}};
}

Json to_json(const ObjectivityReport& report) {
  return Json{{"spec", to_json(report.spec)},
              {"redundancy", report.redundancy},
              {"consensus", report.consensus},
              {"crossing_found", report.crossing_found},
              {"threshold", report.threshold},
              {"m0", report.crossing_found ? Json(report.m0) : Json(nullptr)},
              {"f0", report.crossing_found ? Json(report.f0) : Json(nullptr)},
              {"curve", to_json(report.curve)}};
}

Json to_json(const SbsVerdict& verdict) {
  return Json{{"pass", verdict.pass},
              {"violated", std::string(to_string(verdict.violated))},
              {"witness", verdict.witness},
              {"violation", verdict.violation}};
}

Json to_json(const OracleReport& report) {
  Json masks = Json::array();
  for (const auto& row : report.masks) {
    masks.push_back(Json{{"mask", row.mask},
                         {"case", row.case_label},
                         {"qmi_bits", row.qmi_bits},
                         {"qmi_over_S", row.qmi_over_S},
                         {"analytic_over_S", row.analytic_over_S}});
  }
  Json averages = Json::array();
  for (const auto& row : report.averages) {
    averages.push_back(Json{{"m", row.m},
                            {"oracle_qmi_over_S", row.oracle_qmi_over_S},
                            {"analytic_qmi_over_S", row.analytic_qmi_over_S},
                            {"analytic_acc_over_S", row.analytic_acc_over_S},
                            {"deviation", row.deviation}});
  }
  return Json{{"spec", to_json(report.spec)},
              {"max_mask_deviation", report.max_mask_deviation},
              {"max_average_deviation", report.max_average_deviation},
              {"averages", averages},
              {"masks", masks}};
}

std::string to_csv(const MICurve& curve) {
  std::ostringstream out;
  out << "m,f,qmi_over_S,acc_over_S\n";
  for (const auto& pt : curve.points) {
    out << pt.m << ',' << format_real(pt.f) << ',' << format_real(pt.qmi_over_S) << ',' << format_real(pt.acc_over_S)
        << '\n';
  }
  return out.str();
}

}  // namespace qobjex
