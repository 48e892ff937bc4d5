#include "torus_embed/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "torus_embed/errors.hpp"

namespace torus_embed::io {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) throw InputError("cannot serialize a non-finite number");
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_scalar(const Json& v) { return !v.is_array() && !v.is_object(); }

void emit(const Json& v, std::size_t indent, std::string& out) {
  switch (v.type()) {
    case Json::value_t::null:
      out += "null";
      return;
    case Json::value_t::boolean:
      out += v.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(v.get<std::int64_t>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(v.get<std::uint64_t>());
      return;
    case Json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    case Json::value_t::string:
      out += v.dump();
      return;
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      if (std::all_of(v.begin(), v.end(), is_scalar)) {
        out += '[';
        bool first = true;
        for (const auto& e : v) {
          if (!first) out += ", ";
          first = false;
          emit(e, indent, out);
        }
        out += ']';
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += ",\n";
        first = false;
        out.append(indent + 2, ' ');
        emit(e, indent + 2, out);
      }
      out += '\n';
      out.append(indent, ' ');
      out += ']';
      return;
    }
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, e] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out.append(indent + 2, ' ');
        out += Json(key).dump();
        out += ": ";
        emit(e, indent + 2, out);
      }
      out += '\n';
      out.append(indent, ' ');
      out += '}';
      return;
    }
    default:
      throw InputError("cannot serialize JSON value of this type");
  }
}

Json matrix_json(const std::vector<std::vector<double>>& rows) {
  Json out = Json::array();
  for (const auto& row : rows) {
    Json r = Json::array();
    for (double v : row) r.push_back(v);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<double>> matrix_rows(const Json& v, const std::string& field) {
  if (!v.is_array()) throw InputError(field + " must be an array of arrays");
  std::vector<std::vector<double>> rows;
  for (const auto& row : v) {
    if (!row.is_array()) throw InputError(field + " must be an array of arrays");
    std::vector<double> r;
    for (const auto& e : row) {
      if (!e.is_number()) throw InputError(field + " holds a non-numeric entry");
      r.push_back(e.get<double>());
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

Json size_list(const std::vector<std::size_t>& values) {
  Json out = Json::array();
  for (auto v : values) out.push_back(v);
  return out;
}

// Field accessors for certificates; every failure names the field path.
const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw InvalidCertificate(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw InvalidCertificate(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

double number_at(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_number()) throw InvalidCertificate(join(path, key), "expected a number");
  return v.get<double>();
}

std::size_t count_value(const Json& v, const std::string& where) {
  if (!v.is_number_unsigned()) throw InvalidCertificate(where, "expected a non-negative integer");
  return v.get<std::size_t>();
}

std::size_t count_at(const Json& obj, const std::string& key, const std::string& path) {
  return count_value(field(obj, key, path), join(path, key));
}

std::string string_at(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = field(obj, key, path);
  if (!v.is_string()) throw InvalidCertificate(join(path, key), "expected a string");
  return v.get<std::string>();
}

BigInt bigint_value(const Json& v, const std::string& where) {
  if (!v.is_string()) throw InvalidCertificate(where, "expected a decimal string");
  try {
    return parse_decimal(v.get<std::string>());
  } catch (const InputError& e) {
    throw InvalidCertificate(where, e.what());
  }
}

BigInt bigint_at(const Json& obj, const std::string& key, const std::string& path) {
  return bigint_value(field(obj, key, path), join(path, key));
}

std::vector<std::size_t> counts_at(const Json& obj, const std::string& key, const std::string& path) {
  const Json& v = field(obj, key, path);
  const std::string where = join(path, key);
  if (!v.is_array()) throw InvalidCertificate(where, "expected an array");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(count_value(v[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

CertificateParameters parameters_from_json(const Json& p) {
  const std::string path = "parameters";
  CertificateParameters out;
  out.alpha = number_at(p, "alpha", path);
  out.alpha_squared = number_at(p, "alpha_squared", path);
  out.lambda_min = number_at(p, "lambda_min", path);
  out.alpha_fraction = number_at(p, "alpha_fraction", path);
  out.requested_delta = number_at(p, "requested_delta", path);
  out.delta = number_at(p, "delta", path);
  out.max_delta_error = number_at(p, "max_delta_error", path);
  out.n0 = bigint_at(p, "n0", path);
  out.n = bigint_at(p, "n", path);
  out.m = bigint_at(p, "m", path);
  out.delta_radius = number_at(p, "delta_radius", path);
  out.delta_factor_count = count_at(p, "delta_factor_count", path);
  out.used_coordinates = counts_at(p, "used_coordinates", path);
  out.dropped_coordinates = counts_at(p, "dropped_coordinates", path);
  out.mode = string_at(p, "mode", path);
  out.correction_m = bigint_at(p, "correction_m", path);

  const Json& corr = field(p, "correction", path);
  const std::string cpath = "parameters.correction";
  out.correction_margin = number_at(corr, "margin", cpath);
  out.base_side = number_at(corr, "base_side", cpath);
  const Json& factors = field(corr, "pair_factors", cpath);
  if (!factors.is_array()) throw InvalidCertificate(cpath + ".pair_factors", "expected an array");
  for (std::size_t k = 0; k < factors.size(); ++k) {
    const std::string fpath = cpath + ".pair_factors[" + std::to_string(k) + "]";
    PairFactorRecord f;
    f.i = count_at(factors[k], "i", fpath);
    f.j = count_at(factors[k], "j", fpath);
    f.side = number_at(factors[k], "side", fpath);
    f.phi = counts_at(factors[k], "phi", fpath);
    out.pair_factors.push_back(std::move(f));
  }
  return out;
}

Json parameters_to_json(const CertificateParameters& p) {
  Json out;
  out["alpha"] = p.alpha;
  out["alpha_squared"] = p.alpha_squared;
  out["lambda_min"] = p.lambda_min;
  out["alpha_fraction"] = p.alpha_fraction;
  out["requested_delta"] = p.requested_delta;
  out["delta"] = p.delta;
  out["max_delta_error"] = p.max_delta_error;
  out["n0"] = to_decimal(p.n0);
  out["n"] = to_decimal(p.n);
  out["m"] = to_decimal(p.m);
  out["m_bits"] = bit_length(p.m);
  out["delta_radius"] = p.delta_radius;
  out["delta_factor_count"] = p.delta_factor_count;
  out["used_coordinates"] = size_list(p.used_coordinates);
  out["dropped_coordinates"] = size_list(p.dropped_coordinates);
  out["mode"] = p.mode;
  out["correction_m"] = to_decimal(p.correction_m);
  Json corr;
  corr["margin"] = p.correction_margin;
  corr["base_side"] = p.base_side;
  Json factors = Json::array();
  for (const auto& f : p.pair_factors) {
    Json jf;
    jf["i"] = f.i;
    jf["j"] = f.j;
    jf["side"] = f.side;
    jf["phi"] = size_list(f.phi);
    factors.push_back(std::move(jf));
  }
  corr["pair_factors"] = std::move(factors);
  out["correction"] = std::move(corr);
  return out;
}

Json pair_error_json(const PairError& e) {
  Json out;
  out["i"] = e.i;
  out["j"] = e.j;
  out["expected"] = e.expected;
  out["actual"] = e.actual;
  out["abs_error"] = e.abs_error;
  if (std::isfinite(e.rel_error)) {
    out["rel_error"] = e.rel_error;
  } else {
    out["rel_error"] = nullptr;
  }
  return out;
}

}  // namespace

std::string dump_canonical(const Json& value) {
  std::string out;
  emit(value, 0, out);
  out += '\n';
  return out;
}

EmbedInput parse_input(const Json& doc) {
  if (!doc.is_object()) throw InputError("input must be a JSON object");
  const bool has_points = doc.contains("points");
  const bool has_sq = doc.contains("squared_distances");
  if (has_points == has_sq) {
    throw InputError("input must contain exactly one of \"points\" or \"squared_distances\"");
  }
  if (has_points) {
    PointSet p(matrix_rows(doc["points"], "points"));
    if (p.empty()) throw InputError("points: empty point set");
    return p;
  }
  SquaredDistanceMatrix d(matrix_rows(doc["squared_distances"], "squared_distances"));
  if (d.size() == 0) throw InputError("squared_distances: empty matrix");
  return d;
}

Json points_to_json(const PointSet& points) {
  Json out;
  out["points"] = matrix_json(points.to_rows());
  return out;
}

Json certificate_to_json(const EmbeddingCertificate& c) {
  Json out;
  out["input"]["squared_distances"] = matrix_json(c.input.to_rows());
  Json factors = Json::array();
  for (const auto& f : c.torus.factors) {
    Json jf;
    jf["m"] = to_decimal(f.m);
    jf["r"] = f.r;
    factors.push_back(std::move(jf));
  }
  out["torus"]["factors"] = std::move(factors);
  Json assignment = Json::array();
  for (const auto& p : c.assignment) {
    Json idx = Json::array();
    for (const auto& j : p.indices) idx.push_back(to_decimal(j));
    assignment.push_back(std::move(idx));
  }
  out["assignment"] = std::move(assignment);
  if (c.parameters) out["parameters"] = parameters_to_json(*c.parameters);
  if (c.errors) {
    out["errors"]["max_abs"] = c.errors->max_abs;
    out["errors"]["max_rel"] = c.errors->max_rel;
  }
  if (c.meta) {
    out["meta"]["version"] = c.meta->version;
    out["meta"]["accept_tol"] = c.meta->accept_tol;
    out["meta"]["rank_tol"] = c.meta->rank_tol;
  }
  return out;
}

EmbeddingCertificate certificate_from_json(const Json& doc) {
  if (!doc.is_object()) throw InvalidCertificate("<root>", "expected an object");
  EmbeddingCertificate c;
  const Json& input = field(doc, "input", "");
  const Json& sq = field(input, "squared_distances", "input");
  try {
    c.input = SquaredDistanceMatrix(matrix_rows(sq, "input.squared_distances"));
  } catch (const InputError& e) {
    throw InvalidCertificate("input.squared_distances", e.what());
  }

  const Json& factors = field(field(doc, "torus", ""), "factors", "torus");
  if (!factors.is_array()) throw InvalidCertificate("torus.factors", "expected an array");
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const std::string path = "torus.factors[" + std::to_string(f) + "]";
    c.torus.factors.push_back(PolygonSpec{bigint_at(factors[f], "m", path), number_at(factors[f], "r", path)});
  }

  const Json& assignment = field(doc, "assignment", "");
  if (!assignment.is_array()) throw InvalidCertificate("assignment", "expected an array");
  for (std::size_t s = 0; s < assignment.size(); ++s) {
    const std::string path = "assignment[" + std::to_string(s) + "]";
    if (!assignment[s].is_array()) throw InvalidCertificate(path, "expected an array");
    TorusPoint p;
    for (std::size_t f = 0; f < assignment[s].size(); ++f) {
      p.indices.push_back(bigint_value(assignment[s][f], path + "[" + std::to_string(f) + "]"));
    }
    c.assignment.push_back(std::move(p));
  }

  if (const auto it = doc.find("parameters"); it != doc.end() && !(it->is_object() && it->empty())) {
    c.parameters = parameters_from_json(*it);
  }
  if (const auto it = doc.find("errors"); it != doc.end()) {
    c.errors = ErrorReport{number_at(*it, "max_abs", "errors"), number_at(*it, "max_rel", "errors")};
  }
  if (const auto it = doc.find("meta"); it != doc.end()) {
    c.meta = CertificateMeta{string_at(*it, "version", "meta"), number_at(*it, "accept_tol", "meta"),
                             number_at(*it, "rank_tol", "meta")};
  }
  check_structure(c);
  return c;
}

Json inspect_summary(const EmbeddingCertificate& c) {
  Json out;
  out["points"] = c.assignment.size();
  out["factor_count"] = c.torus.factors.size();
  out["ambient_dim"] = c.torus.ambient_dim();

  std::map<BigInt, std::size_t> orders;
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = 0.0;
  for (const auto& f : c.torus.factors) {
    ++orders[f.m];
    rmin = std::min(rmin, f.r);
    rmax = std::max(rmax, f.r);
  }
  Json ms = Json::array();
  for (const auto& [m, count] : orders) {
    Json e;
    e["m"] = to_decimal(m);
    e["bits"] = bit_length(m);
    e["factors"] = count;
    ms.push_back(std::move(e));
  }
  out["orders"] = std::move(ms);
  out["radius_min"] = c.torus.factors.empty() ? 0.0 : rmin;
  out["radius_max"] = rmax;
  if (c.parameters) {
    out["alpha"] = c.parameters->alpha;
    out["delta"] = c.parameters->delta;
    out["mode"] = c.parameters->mode;
    out["delta_factor_count"] = c.parameters->delta_factor_count;
    out["correction_factor_count"] = c.torus.factors.size() - c.parameters->delta_factor_count;
  }
  if (c.errors) {
    out["max_abs"] = c.errors->max_abs;
    out["max_rel"] = c.errors->max_rel;
  }
  return out;
}

Json report_to_json(const VerificationReport& r) {
  Json out;
  out["pass"] = r.pass;
  out["tolerance"] = r.tol;
  out["max_abs"] = r.max_abs;
  if (std::isfinite(r.max_rel)) {
    out["max_rel"] = r.max_rel;
  } else {
    out["max_rel"] = nullptr;
  }
  out["pairs_checked"] = r.pairs_checked;
  out["failing_pairs"] = r.failing_pairs;
  if (r.worst) out["worst"] = pair_error_json(*r.worst);
  Json failures = Json::array();
  for (const auto& e : r.failures) failures.push_back(pair_error_json(e));
  out["failures"] = std::move(failures);
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw InputError("cannot read '" + path.string() + "'");
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw InputError("cannot write '" + path.string() + "'");
}

Json read_json(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("malformed JSON in '" + path.string() + "': " + e.what());
  }
}

}  // namespace torus_embed::io
