#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "torus_embed/almost_regular.hpp"
#include "torus_embed/delta_embed.hpp"
#include "torus_embed/errors.hpp"
#include "torus_embed/generate.hpp"
#include "torus_embed/io.hpp"
#include "torus_embed/pipeline.hpp"
#include "torus_embed/polygon_torus.hpp"
#include "torus_embed/regular_simplex.hpp"

namespace py = pybind11;
using namespace torus_embed;

namespace {

// Python ints cross the boundary as decimal text.
BigInt to_big(const py::int_& v) { return parse_decimal(py::str(v).cast<std::string>()); }

py::int_ from_big(const BigInt& v) {
  return py::reinterpret_steal<py::int_>(PyLong_FromString(to_decimal(v).c_str(), nullptr, 10));
}

TorusSpec to_torus(const std::vector<std::pair<py::int_, double>>& factors) {
  TorusSpec t;
  for (const auto& [m, r] : factors) t.factors.push_back(PolygonSpec{to_big(m), r});
  validate(t);
  return t;
}

TorusPoint to_point(const std::vector<py::int_>& indices) {
  TorusPoint p;
  for (const auto& i : indices) p.indices.push_back(to_big(i));
  return p;
}

py::dict embedding_dict(const TorusEmbedding& e) {
  py::list factors;
  for (const auto& f : e.torus.factors) factors.append(py::make_tuple(from_big(f.m), f.r));
  py::list points;
  for (const auto& p : e.points) {
    py::list row;
    for (const auto& i : p.indices) row.append(from_big(i));
    points.append(row);
  }
  py::dict out;
  out["factors"] = factors;
  out["points"] = points;
  return out;
}

io::Json parse_text(const std::string& text) {
  try {
    return io::Json::parse(text);
  } catch (const io::Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

io::EmbedInput embed_input(const Eigen::MatrixXd& data, bool squared) {
  if (squared) return SquaredDistanceMatrix(data);
  return PointSet(data);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Isometric embeddings of simplices into regular polygonal tori";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "TorusEmbedError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<NotEuclidean>(m, "NotEuclidean", base.ptr());
  py::register_exception<NotSimplex>(m, "NotSimplex", base.ptr());
  py::register_exception<TrivialInput>(m, "TrivialInput", base.ptr());
  py::register_exception<NotAlmostRegular>(m, "NotAlmostRegular", base.ptr());
  py::register_exception<VerificationFailed>(m, "VerificationFailed", base.ptr());
  py::register_exception<InvalidCertificate>(m, "InvalidCertificate", base.ptr());

  m.def("squared_distances", [](const Eigen::MatrixXd& points) { return squared_distances(PointSet(points)).entries(); },
        py::arg("points"));
  m.def("centered_gram",
        [](const Eigen::MatrixXd& sq) { return centered_gram(SquaredDistanceMatrix(sq)).entries(); },
        py::arg("squared_distances"));
  m.def("realize", [](const Eigen::MatrixXd& gram, double tol) { return realize(GramMatrix(gram), tol).coords(); },
        py::arg("gram"), py::arg("tol") = kDefaultRankTol);
  m.def("is_simplex", [](const Eigen::MatrixXd& points, double tol) { return is_simplex(PointSet(points), tol); },
        py::arg("points"), py::arg("tol") = kDefaultRankTol);

  m.def("chord", [](const py::int_& mm, double r, const py::int_& dj) { return chord(to_big(mm), r, to_big(dj)); },
        py::arg("m"), py::arg("r"), py::arg("steps"));
  m.def(
      "torus_distance",
      [](const std::vector<std::pair<py::int_, double>>& factors, const std::vector<py::int_>& p,
         const std::vector<py::int_>& q) { return torus_distance(to_torus(factors), to_point(p), to_point(q)); },
      py::arg("factors"), py::arg("p"), py::arg("q"));
  m.def(
      "materialize",
      [](const std::vector<std::pair<py::int_, double>>& factors, const std::vector<py::int_>& p) {
        return Eigen::VectorXd(materialize(to_torus(factors), to_point(p)).transpose());
      },
      py::arg("factors"), py::arg("p"));

  m.def("regular_simplex", [](std::size_t n, double side) { return regular_simplex(n, side).coords(); },
        py::arg("n"), py::arg("side"));
  m.def(
      "embed_regular_simplex",
      [](std::size_t n, double alpha, const py::int_& mm) {
        return embedding_dict(embed_regular_simplex(n, alpha, to_big(mm)));
      },
      py::arg("n"), py::arg("alpha"), py::arg("m"));

  m.def(
      "check_almost_regular",
      [](const Eigen::MatrixXd& a) {
        const auto c = check_almost_regular(a);
        return py::make_tuple(c.valid, c.margin);
      },
      py::arg("distances"));
  m.def(
      "realize_almost_regular",
      [](const Eigen::MatrixXd& a) { return realize_almost_regular(AlmostRegularMatrix::from_distances(a)).points.coords(); },
      py::arg("distances"));

  m.def(
      "one_dim_params",
      [](const std::vector<double>& xs, double delta) {
        const auto p = one_dim_params(xs, delta);
        py::dict out;
        out["n0"] = from_big(p.n0);
        out["n"] = from_big(p.n);
        out["m"] = from_big(p.m);
        out["r"] = p.r;
        return out;
      },
      py::arg("xs"), py::arg("delta"));
  m.def(
      "product_embed",
      [](const Eigen::MatrixXd& points, double delta) {
        const auto e = product_embed(PointSet(points), delta);
        py::dict out = embedding_dict(e.embedding);
        out["delta"] = e.delta;
        out["max_error"] = e.max_abs_error();
        return out;
      },
      py::arg("points"), py::arg("delta"));

  m.def(
      "schoenberg_decompose",
      [](const Eigen::MatrixXd& points, double tol, double alpha_fraction) {
        const auto d = schoenberg_decompose(PointSet(points), tol, alpha_fraction);
        py::dict out;
        out["base"] = d.base.coords();
        out["alpha"] = d.alpha;
        out["alpha_squared"] = d.alpha_squared;
        out["lambda_min"] = d.lambda_min;
        return out;
      },
      py::arg("points"), py::arg("tol") = kDefaultRankTol, py::arg("alpha_fraction") = 1.0);

  m.def(
      "_embed",
      [](const Eigen::MatrixXd& data, bool squared, double tolerance, bool uniform_m, double alpha_fraction) {
        PipelineConfig cfg;
        cfg.accept_tol = tolerance;
        cfg.uniform_m = uniform_m;
        cfg.alpha_fraction = alpha_fraction;
        const auto input = embed_input(data, squared);
        const auto cert = std::visit([&](const auto& in) { return embed_simplex(in, cfg); }, input);
        return io::dump_canonical(io::certificate_to_json(cert));
      },
      py::arg("data"), py::arg("squared"), py::arg("tolerance"), py::arg("uniform_m"), py::arg("alpha_fraction"));
  m.def(
      "_verify",
      [](const std::string& text, double tolerance) {
        const auto cert = io::certificate_from_json(parse_text(text));
        return io::dump_canonical(io::report_to_json(verify_certificate(cert, tolerance)));
      },
      py::arg("certificate"), py::arg("tolerance"));
  m.def(
      "_inspect",
      [](const std::string& text) {
        return io::dump_canonical(io::inspect_summary(io::certificate_from_json(parse_text(text))));
      },
      py::arg("certificate"));
  m.def(
      "_canonical", [](const std::string& text) { return io::dump_canonical(parse_text(text)); },
      py::arg("text"));
  m.def(
      "generate",
      [](const std::string& kind, std::size_t n, std::uint64_t seed, double noise) {
        return generate_input(parse_input_kind(kind), n, seed, noise).coords();
      },
      py::arg("kind"), py::arg("n"), py::arg("seed") = 0, py::arg("noise") = 0.01);

  m.attr("DEFAULT_TOLERANCE") = kDefaultAcceptTol;
  m.attr("DEFAULT_RANK_TOL") = kDefaultRankTol;
}
