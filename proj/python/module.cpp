#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sighyp/bessel_cert.hpp"
#include "sighyp/development.hpp"
#include "sighyp/domain.hpp"
#include "sighyp/pde_nested.hpp"
#include "sighyp/signature.hpp"
#include "sighyp/stopped_bm.hpp"
#include "sighyp/tensor.hpp"
#include "sighyp/verify.hpp"

namespace py = pybind11;
using namespace sighyp;

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Polyline to_polyline(const RowMatrix& pts)
{
    if (pts.rows() < 1 || pts.cols() < 1) throw std::invalid_argument("path must be an (m, d) array with m, d >= 1");
    return Polyline(static_cast<int>(pts.cols()),
                    std::vector<double>(pts.data(), pts.data() + pts.size()));
}

py::dict estimate_dict(const McEstimate& e)
{
    py::dict out;
    out["components"] = e.components;
    out["mean"] = e.mean;
    out["stderr"] = e.std_error;
    out["paths"] = e.paths;
    return out;
}

McConfig make_config(std::uint64_t seed, std::size_t paths, double step, int level, double lambda,
                     std::vector<double> start, int threads)
{
    McConfig c;
    c.seed = seed;
    c.paths = paths;
    c.step = step;
    c.level = level;
    c.lambda = lambda;
    c.start = std::move(start);
    c.threads = threads;
    return c;
}

Domain domain_from_json(const std::string& text) { return Domain::from_json(nlohmann::json::parse(text)); }

}  // namespace

PYBIND11_MODULE(_sighyp, m)
{
    m.doc() = "Expected signatures of stopped Brownian motion and their hyperbolic development";

    m.def("signature", [](const RowMatrix& path, int level) {
        const TruncatedTensor s = polyline_signature(to_polyline(path), level);
        return py::array_t<double>(static_cast<py::ssize_t>(s.raw().size()), s.raw().data());
    }, py::arg("path"), py::arg("level"), "Truncated signature of a polyline, levels concatenated.");
    m.def("component_names", &tensor_component_names, py::arg("d"), py::arg("level"));
    m.def("tensor_mul", [](const std::vector<double>& a, const std::vector<double>& b, int d, int level) {
        TruncatedTensor x(d, level), y(d, level);
        if (a.size() != x.total_size() || b.size() != y.total_size())
            throw std::invalid_argument("coefficient vectors do not match (d, level)");
        x.raw() = a;
        y.raw() = b;
        return tensor_mul(x, y).raw();
    }, py::arg("a"), py::arg("b"), py::arg("d"), py::arg("level"));
    m.def("development", [](const RowMatrix& path, double lambda) {
        return DevVector(polyline_development(to_polyline(path), lambda));
    }, py::arg("path"), py::arg("lam"));
    m.def("hyperboloid_residual", [](const Eigen::VectorXd& x) { return hyperboloid_residual(x); });

    py::class_<Domain>(m, "Domain")
        .def_static("ball", &Domain::ball, py::arg("center"), py::arg("radius") = 1.0)
        .def_static("ellipsoid", &Domain::ellipsoid, py::arg("semi_axes"), py::arg("center") = std::vector<double>{})
        .def_static("from_json", &domain_from_json)
        .def("to_json", [](const Domain& d) { return d.to_json().dump(); })
        .def_property_readonly("dim", &Domain::dim)
        .def("inside", [](const Domain& d, const std::vector<double>& x) { return d.inside(x); });

    auto mc = [&](const char* name, auto fn) {
        m.def(name, [fn](const Domain& dom, std::vector<double> start, std::uint64_t seed, std::size_t paths,
                         double step, int level, double lam, int threads) {
            McConfig c = make_config(seed, paths, step, level, lam, std::move(start), threads);
            c.validate(dom);
            McEstimate e;
            {
                py::gil_scoped_release release;
                e = fn(dom, c);
            }
            return estimate_dict(e);
        }, py::arg("domain"), py::arg("start"), py::arg("seed") = 20240611, py::arg("paths") = 10000,
              py::arg("step") = 1e-4, py::arg("level") = 2, py::arg("lam") = 1.0, py::arg("threads") = 0);
    };
    mc("mc_exit_time", [](const Domain& d, const McConfig& c) { return mc_exit_time(d, c); });
    mc("mc_expected_signature", [](const Domain& d, const McConfig& c) { return mc_expected_signature(d, c); });
    mc("mc_development", [](const Domain& d, const McConfig& c) { return mc_development(d, c); });

    m.def("pde_point_values", [](const Domain& dom, int level, const std::vector<double>& z, double h) {
        PdeConfig c;
        c.h = h;
        const PdePointValues v = pde_point_values(dom, level, z, c);
        py::dict out;
        out["components"] = v.components;
        out["value"] = v.value;
        out["grid_error"] = v.grid_error;
        return out;
    }, py::arg("domain"), py::arg("level"), py::arg("z"), py::arg("h") = 0.02);

    m.def("bessel_j", [](double nu, std::complex<double> z, int n) {
        return n < 0 ? bessel_j(nu, z) : bessel_j(nu, z, n);
    }, py::arg("nu"), py::arg("z"), py::arg("n") = -1);
    m.def("remainder_bound", py::overload_cast<double, double, int>(&remainder_bound), py::arg("nu"),
          py::arg("abs_z"), py::arg("n"));
    m.def("theta", &theta, py::arg("lam"), py::arg("d"));
    m.def("numerator_ball", &numerator_ball, py::arg("lam"), py::arg("d"));
    m.def("h1_closed_form", &h1_closed_form, py::arg("r"), py::arg("lam"), py::arg("d"));
    m.def("hd1_closed_form", &hd1_closed_form, py::arg("r"), py::arg("lam"), py::arg("d"));
    m.def("hd1_center_general", &hd1_center_general, py::arg("eps"), py::arg("lam"), py::arg("d"),
          py::arg("p") = 0.0, py::arg("q") = 1.0);
    m.def("bracket_theta_root", [](int d, double a, double b, double width) {
        const RootBracket r = bracket_theta_root(d, a, b, width);
        py::dict out;
        out["lo"] = r.lo;
        out["hi"] = r.hi;
        out["root"] = r.root;
        out["width"] = r.width;
        out["certified"] = r.certified();
        return out;
    }, py::arg("d"), py::arg("a") = 2.5, py::arg("b") = 3.0, py::arg("width") = 1e-8);

    m.def("verify", [](const std::string& which) {
        Report r;
        if (which == "table1") r = reproduce_table1();
        else if (which == "table2") r = reproduce_table2();
        else if (which == "table4") r = reproduce_table4();
        else if (which == "lemma2d") r = verify_2d_lemma();
        else if (which == "brackets") r = verify_brackets();
        else if (which == "blowup") r = verify_blowup();
        else if (which == "closed") r = verify_closed_forms();
        else if (which == "all") r = verify_all();
        else throw std::invalid_argument("unknown report '" + which + "'");
        py::list rows;
        for (const auto& c : r.checks)
            rows.append(py::dict(py::arg("check") = c.id, py::arg("value") = c.value, py::arg("relation") = c.relation,
                                 py::arg("reference") = c.reference, py::arg("tolerance") = c.tolerance,
                                 py::arg("pass") = c.pass, py::arg("note") = c.note));
        return py::make_tuple(r.pass(), rows);
    }, py::arg("which"), "Returns (overall pass, list of check rows).");

    py::register_exception<PoleError>(m, "PoleError", PyExc_ArithmeticError);
}
