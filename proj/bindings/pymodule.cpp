#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "blocknorm/falsify.hpp"
#include "blocknorm/io.hpp"
#include "blocknorm/search.hpp"

namespace py = pybind11;

namespace {

using blocknorm::Complex;
using blocknorm::Matrix;

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const ComplexArray& arr) {
    if (arr.ndim() != 2) {
        throw py::value_error("expected a 2-D array");
    }
    const auto rows = static_cast<std::size_t>(arr.shape(0));
    const auto cols = static_cast<std::size_t>(arr.shape(1));
    std::vector<Complex> entries(rows * cols);
    auto view = arr.unchecked<2>();
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) entries[i * cols + j] = view(i, j);
    }
    return Matrix(rows, cols, std::move(entries));
}

py::array_t<Complex> to_array(const Matrix& m) {
    py::array_t<Complex> arr({m.rows(), m.cols()});
    auto view = arr.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) view(i, j) = m(i, j);
    }
    return arr;
}

py::object json_to_py(const blocknorm::io::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

blocknorm::ProblemInstance instance_from_arrays(const ComplexArray& a, const ComplexArray& x,
                                                const ComplexArray& b) {
    return blocknorm::make_problem_instance(to_matrix(a), to_matrix(x), to_matrix(b));
}

}  // namespace

PYBIND11_MODULE(blocknorm, m) {
    m.doc() = "numerical exploration of the positive block-matrix norm inequality";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const blocknorm::Error& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("operator_norm", [](const ComplexArray& a) { return blocknorm::operator_norm(to_matrix(a)); });
    m.def("two_by_two_norm", &blocknorm::two_by_two_norm, py::arg("a"), py::arg("c"));
    m.def("herm_eigen", [](const ComplexArray& a) {
        const auto eig = blocknorm::herm_eigen(to_matrix(a));
        return py::make_tuple(eig.values, to_array(eig.vectors));
    });
    m.def("is_psd", [](const ComplexArray& a) { return blocknorm::is_psd(to_matrix(a)); });
    m.def("pd_inverse", [](const ComplexArray& a) { return to_array(blocknorm::pd_inverse(to_matrix(a))); });
    m.def("psd_sqrt", [](const ComplexArray& a) { return to_array(blocknorm::psd_sqrt(to_matrix(a))); });
    m.def("polar_left", [](const ComplexArray& a) {
        const auto polar = blocknorm::polar_left(to_matrix(a));
        return py::make_tuple(to_array(polar.d), to_array(polar.u));
    });
    m.def("commutator_defect",
          [](const ComplexArray& a) { return blocknorm::commutator_defect(to_matrix(a)); });
    m.def("is_line_segment_range",
          [](const ComplexArray& a) { return blocknorm::is_line_segment_range(to_matrix(a)); });

    m.def("assemble_block", [](const ComplexArray& a, const ComplexArray& x, const ComplexArray& b) {
        return to_array(blocknorm::assemble_block(to_matrix(a), to_matrix(x), to_matrix(b)));
    });
    m.def("schur_feasible", [](const ComplexArray& a, const ComplexArray& x, const ComplexArray& b) {
        return blocknorm::schur_feasible(to_matrix(a), to_matrix(x), to_matrix(b));
    });
    m.def("norm_gap", [](const ComplexArray& a, const ComplexArray& x, const ComplexArray& b) {
        return blocknorm::norm_gap(instance_from_arrays(a, x, b));
    });
    m.def("floor_norms", [](const ComplexArray& a, const ComplexArray& x) {
        const auto fn = blocknorm::floor_norms(to_matrix(a), to_matrix(x));
        return py::make_tuple(fn.direct, fn.swapped);
    });
    m.def("classify_trichotomy", [](const ComplexArray& a, const ComplexArray& x) {
        return std::string(
            blocknorm::trichotomy_name(blocknorm::classify_trichotomy(to_matrix(a), to_matrix(x))));
    });
    m.def("zero_slack_sides", [](const ComplexArray& a, const ComplexArray& x) {
        const auto sides = blocknorm::zero_slack_sides(to_matrix(a), to_matrix(x));
        return py::make_tuple(sides.block_side, sides.sum_side);
    });
    m.def("inverse_pair_bound", [](const ComplexArray& a, const ComplexArray& u) {
        const auto bound = blocknorm::inverse_pair_bound(to_matrix(a), to_matrix(u));
        py::dict out;
        out["plain"] = bound.plain;
        out["conjugated"] = bound.conjugated;
        out["holds"] = bound.holds;
        out["endpoint_formula"] = bound.endpoint_formula;
        return out;
    });
    m.def("both_arrangements_psd",
          [](const ComplexArray& a, const ComplexArray& x, const ComplexArray& b) {
              return blocknorm::both_arrangements_psd(instance_from_arrays(a, x, b));
          });
    m.def("reference_counterexample", [] {
        const auto ref = blocknorm::reference_counterexample();
        py::dict out;
        out["A"] = to_array(ref.instance.a);
        out["X"] = to_array(ref.instance.x);
        out["B"] = to_array(ref.instance.b);
        out["feasible"] = ref.instance.feasible;
        out["sum_norm"] = ref.sum_norm;
        out["block_lower_bound"] = ref.block_lower_bound;
        return out;
    });
    m.def("norm_additivity_gap", [](const ComplexArray& d, const ComplexArray& u) {
        return blocknorm::norm_additivity_gap(to_matrix(d), to_matrix(u));
    });
    m.def("violation_from_additivity",
          [](const ComplexArray& d, const ComplexArray& u) -> py::object {
              const auto cert = blocknorm::violation_from_additivity(to_matrix(d), to_matrix(u));
              if (!cert) return py::none();
              return json_to_py(blocknorm::io::certificate_to_json(*cert));
          });
    m.def("aligned_top_vector", [](const ComplexArray& d, const ComplexArray& u) -> py::object {
        const auto xi = blocknorm::aligned_top_vector(to_matrix(d), to_matrix(u));
        if (!xi) return py::none();
        return to_array(*xi);
    });
    m.def(
        "peel_falsify",
        [](const ComplexArray& x, double k_max) {
            return json_to_py(blocknorm::io::falsify_outcome_to_json(
                blocknorm::peel_falsify(to_matrix(x), {}, k_max)));
        },
        py::arg("x"), py::arg("k_max") = blocknorm::kDefaultKMax);
    m.def("planted_violation_x",
          [](std::size_t n) { return to_array(blocknorm::planted_violation_x(n)); });

    m.def(
        "random_pd",
        [](std::size_t n, double cond_cap, std::uint64_t seed, std::uint64_t stream) {
            blocknorm::RngStream rng(seed, stream);
            return to_array(blocknorm::random_pd(n, cond_cap, rng));
        },
        py::arg("n"), py::arg("cond_cap") = 1e4, py::arg("seed") = 0, py::arg("stream") = 0);
    m.def(
        "random_unitary",
        [](std::size_t n, std::uint64_t seed, std::uint64_t stream) {
            blocknorm::RngStream rng(seed, stream);
            return to_array(blocknorm::random_unitary(n, rng));
        },
        py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0);
    m.def(
        "random_normal_matrix",
        [](std::size_t n, std::uint64_t seed, std::uint64_t stream) {
            blocknorm::RngStream rng(seed, stream);
            return to_array(blocknorm::random_normal_matrix(n, rng));
        },
        py::arg("n"), py::arg("seed") = 0, py::arg("stream") = 0);

    m.def(
        "search",
        [](const std::string& mode, int dim, int trials, std::uint64_t seed, int hill_climb_steps,
           double condition_cap, int threads) {
            const auto parsed = blocknorm::parse_search_mode(mode);
            if (!parsed) throw py::value_error("mode must be problem1, problem2 or problem5");
            blocknorm::SearchConfig config;
            config.mode = *parsed;
            config.dim = dim;
            config.trials = trials;
            config.seed = seed;
            config.hill_climb_steps = hill_climb_steps;
            config.condition_cap = condition_cap;
            config.threads = threads;
            return json_to_py(blocknorm::io::search_report_to_json(blocknorm::search(config)));
        },
        py::arg("mode") = "problem1", py::arg("dim") = 3, py::arg("trials") = 100,
        py::arg("seed") = 0, py::arg("hill_climb_steps") = 0, py::arg("condition_cap") = 1e4,
        py::arg("threads") = 1);

#ifdef VERSION_INFO
    m.attr("__version__") = VERSION_INFO;
#else
    m.attr("__version__") = "dev";
#endif
}
