#include "pbn/cod.hpp"
#include "pbn/discretize.hpp"
#include "pbn/errors.hpp"
#include "pbn/expression_matrix.hpp"
#include "pbn/infer.hpp"
#include "pbn/oracle.hpp"
#include "pbn/pbn.hpp"
#include "pbn/pipeline.hpp"
#include "pbn/rng.hpp"
#include "pbn/ssd.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

namespace py = pybind11;

namespace {

pbn::ThresholdMethod method_arg(const std::string& name) {
    return pbn::threshold_method_from_string(name);
}

std::vector<double> row_copy(std::span<const double> row) {
    return {row.begin(), row.end()};
}

std::vector<std::uint8_t> bits_copy(std::span<const std::uint8_t> row) {
    return {row.begin(), row.end()};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Probabilistic Boolean network inference and simulation";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const pbn::ConvergenceError& e) {
            PyErr_SetString(PyExc_RuntimeError, e.what());
        } catch (const pbn::DataError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<pbn::ExpressionMatrix>(m, "ExpressionMatrix")
        .def(py::init<std::vector<std::string>, std::vector<std::string>,
                      std::vector<double>>(),
             py::arg("gene_ids"), py::arg("sample_ids"), py::arg("values"))
        .def_property_readonly("gene_ids", &pbn::ExpressionMatrix::gene_ids)
        .def_property_readonly("sample_ids", &pbn::ExpressionMatrix::sample_ids)
        .def_property_readonly("values", &pbn::ExpressionMatrix::values)
        .def("row",
             [](const pbn::ExpressionMatrix& m, std::size_t gene) {
                 if (gene >= m.gene_count()) {
                     throw py::index_error("gene index out of range");
                 }
                 return row_copy(m.row(gene));
             },
             py::arg("gene"))
        .def("to_tsv",
             [](const pbn::ExpressionMatrix& m) {
                 return pbn::serialize_expression_matrix(m);
             })
        .def("__eq__", [](const pbn::ExpressionMatrix& a,
                          const pbn::ExpressionMatrix& b) { return a == b; });

    py::class_<pbn::BinaryMatrix>(m, "BinaryMatrix")
        .def(py::init<std::vector<std::string>, std::vector<std::string>,
                      std::vector<std::uint8_t>>(),
             py::arg("gene_ids"), py::arg("sample_ids"), py::arg("values"))
        .def_property_readonly("gene_ids", &pbn::BinaryMatrix::gene_ids)
        .def_property_readonly("sample_ids", &pbn::BinaryMatrix::sample_ids)
        .def_property_readonly("values", &pbn::BinaryMatrix::values)
        .def("row",
             [](const pbn::BinaryMatrix& b, std::size_t gene) {
                 if (gene >= b.gene_count()) {
                     throw py::index_error("gene index out of range");
                 }
                 return bits_copy(b.row(gene));
             },
             py::arg("gene"))
        .def("to_tsv",
             [](const pbn::BinaryMatrix& b) {
                 return pbn::serialize_binary_matrix(b);
             })
        .def("__eq__", [](const pbn::BinaryMatrix& a,
                          const pbn::BinaryMatrix& b) { return a == b; });

    py::class_<pbn::Predictor>(m, "Predictor")
        .def(py::init([](std::vector<std::uint32_t> inputs,
                         std::vector<double> weights, double cod,
                         double probability) {
                 return pbn::Predictor{std::move(inputs), {std::move(weights)},
                                       cod, probability};
             }),
             py::arg("inputs"), py::arg("weights"), py::arg("cod"),
             py::arg("probability"))
        .def_readonly("inputs", &pbn::Predictor::inputs)
        .def_property_readonly(
            "weights", [](const pbn::Predictor& f) { return f.weights.w; })
        .def_readonly("cod", &pbn::Predictor::cod)
        .def_readonly("probability", &pbn::Predictor::probability);

    py::class_<pbn::Pbn>(m, "Pbn")
        .def(py::init<std::vector<std::string>,
                      std::vector<std::vector<pbn::Predictor>>, double>(),
             py::arg("gene_ids"), py::arg("functions"), py::arg("perturbation"))
        .def_property_readonly("n", &pbn::Pbn::n)
        .def_property_readonly("gene_ids", &pbn::Pbn::gene_ids)
        .def_property_readonly("perturbation", &pbn::Pbn::perturbation)
        .def_property_readonly("functions", &pbn::Pbn::functions)
        .def("to_json",
             [](const pbn::Pbn& net) { return pbn::serialize_pbn(net); })
        .def_static("from_json", [](const std::string& text) {
            return pbn::parse_pbn(std::string_view(text));
        });

    py::class_<pbn::StateHistogram>(m, "StateHistogram")
        .def_readonly("counts", &pbn::StateHistogram::counts)
        .def_readonly("total", &pbn::StateHistogram::total)
        .def("to_csv", [](const pbn::StateHistogram& h) {
            return pbn::emit_histogram(h);
        });

    py::class_<pbn::KsReport>(m, "KsReport")
        .def_readonly("statistic", &pbn::KsReport::statistic)
        .def_readonly("n1", &pbn::KsReport::n1)
        .def_readonly("n2", &pbn::KsReport::n2)
        .def_readonly("alpha", &pbn::KsReport::alpha)
        .def_readonly("critical", &pbn::KsReport::critical)
        .def_readonly("converged", &pbn::KsReport::converged);

    py::class_<pbn::TransitionMatrix>(m, "TransitionMatrix")
        .def_property_readonly("genes", &pbn::TransitionMatrix::genes)
        .def_property_readonly("dim", &pbn::TransitionMatrix::dim)
        .def("__call__", &pbn::TransitionMatrix::operator(),
             py::arg("source"), py::arg("target"))
        .def("row", [](const pbn::TransitionMatrix& P, std::size_t from) {
            if (from >= P.dim()) {
                throw py::index_error("state index out of range");
            }
            std::vector<double> row(P.dim());
            for (std::size_t to = 0; to < P.dim(); ++to) row[to] = P(from, to);
            return row;
        });

    py::class_<pbn::PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("input", &pbn::PipelineConfig::input)
        .def_readwrite("genes", &pbn::PipelineConfig::genes)
        .def_property(
            "method",
            [](const pbn::PipelineConfig& c) {
                return std::string(pbn::to_string(c.method));
            },
            [](pbn::PipelineConfig& c, const std::string& name) {
                c.method = method_arg(name);
            })
        .def_readwrite("k", &pbn::PipelineConfig::k)
        .def_readwrite("n_predictors", &pbn::PipelineConfig::n_predictors)
        .def_readwrite("perturbation", &pbn::PipelineConfig::perturbation)
        .def_readwrite("burn_in", &pbn::PipelineConfig::burn_in)
        .def_readwrite("samples", &pbn::PipelineConfig::samples)
        .def_readwrite("subsample", &pbn::PipelineConfig::subsample)
        .def_readwrite("repeats", &pbn::PipelineConfig::repeats)
        .def_readwrite("alpha", &pbn::PipelineConfig::alpha)
        .def_readwrite("seed", &pbn::PipelineConfig::seed)
        .def_readwrite("out_dir", &pbn::PipelineConfig::out_dir)
        .def_readwrite("threads", &pbn::PipelineConfig::threads);

    py::class_<pbn::PipelineResult>(m, "PipelineResult")
        .def_readonly("binary_path", &pbn::PipelineResult::binary_path)
        .def_readonly("network_path", &pbn::PipelineResult::network_path)
        .def_readonly("histogram_path", &pbn::PipelineResult::histogram_path)
        .def_readonly("ks_path", &pbn::PipelineResult::ks_path)
        .def_readonly("manifest_path", &pbn::PipelineResult::manifest_path)
        .def_readonly("ks", &pbn::PipelineResult::ks);

    m.def("parse_expression_matrix",
          [](const std::string& text) {
              return pbn::parse_expression_matrix(std::string_view(text));
          },
          py::arg("text"), "Parse a tab-separated genes-by-samples matrix");
    m.def("select_genes",
          [](const pbn::ExpressionMatrix& m, std::vector<std::string> wanted) {
              return pbn::select_genes(m, wanted);
          },
          py::arg("matrix"), py::arg("gene_ids"));
    m.def("parse_binary_matrix", [](const std::string& text) {
        return pbn::parse_binary_matrix(std::string_view(text));
    });

    m.def("threshold",
          [](std::vector<double> row, const std::string& method) {
              return pbn::threshold(row, method_arg(method));
          },
          py::arg("row"), py::arg("method"));
    m.def("thresholds",
          [](const pbn::ExpressionMatrix& m, const std::string& method) {
              return pbn::thresholds(m, method_arg(method));
          },
          py::arg("matrix"), py::arg("method"));
    m.def("discretize",
          [](const pbn::ExpressionMatrix& m, const std::string& method,
             unsigned threads) {
              return pbn::discretize(m, method_arg(method),
                                     pbn::DiscretizeAxis::PerGene, threads);
          },
          py::arg("matrix"), py::arg("method") = "median",
          py::arg("threads") = 1, py::call_guard<py::gil_scoped_release>());

    m.def("infer",
          [](const pbn::BinaryMatrix& b, std::size_t k, std::size_t n_predictors,
             double perturbation, unsigned threads) {
              return pbn::infer_pbn(b, k, n_predictors, perturbation, threads);
          },
          py::arg("binary"), py::arg("k") = 3, py::arg("n_predictors") = 10,
          py::arg("perturbation") = 0.001, py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());

    m.def("simulate",
          [](const pbn::Pbn& net, std::uint64_t init, std::uint64_t burn_in,
             std::uint64_t samples, std::uint64_t seed, std::uint64_t stream) {
              auto eng = pbn::make_engine(seed, stream);
              return pbn::simulate(net, pbn::State(init), burn_in, samples, eng);
          },
          py::arg("net"), py::arg("init") = 0, py::arg("burn_in") = 10000,
          py::arg("samples") = 40000, py::arg("seed") = 1, py::arg("stream") = 0,
          py::call_guard<py::gil_scoped_release>());

    m.def("gray_encode",
          [](std::uint64_t v) { return pbn::gray_encode(v); }, py::arg("value"));
    m.def("gray_decode",
          [](std::uint64_t v) { return pbn::gray_decode(v); }, py::arg("value"));

    m.def("histogram",
          [](const std::vector<pbn::State>& states, std::size_t n) {
              return pbn::histogram(states, n);
          },
          py::arg("states"), py::arg("n"));
    m.def("ks_two_half_test",
          [](const std::vector<pbn::State>& states, std::size_t subsample,
             double alpha) {
              return pbn::ks_two_half_test(states, subsample, alpha);
          },
          py::arg("states"), py::arg("subsample") = 10, py::arg("alpha") = 0.05);
    m.def("ks_statistic", &pbn::ks_statistic, py::arg("a"), py::arg("b"));
    m.def("ks_critical", &pbn::ks_critical, py::arg("alpha"), py::arg("n1"),
          py::arg("n2"));

    m.def("build_transition_matrix", &pbn::build_transition_matrix,
          py::arg("net"), py::arg("threads") = 1, py::arg("max_genes") = 14,
          py::call_guard<py::gil_scoped_release>());
    m.def("stationary_distribution", &pbn::stationary_distribution,
          py::arg("matrix"), py::arg("tolerance") = 1e-10,
          py::arg("max_iterations") = 1000000,
          py::call_guard<py::gil_scoped_release>());
    m.def("total_variation",
          [](std::vector<double> a, std::vector<double> b) {
              return pbn::total_variation(a, b);
          },
          py::arg("a"), py::arg("b"));
    m.def("distribution_from_histogram", &pbn::distribution_from_histogram,
          py::arg("histogram"), py::arg("n"));

    m.def("parse_histogram", [](const std::string& text) {
        std::istringstream in(text);
        return pbn::parse_histogram(in);
    });

    m.def("run_pipeline", &pbn::run_pipeline, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("validate_config", &pbn::validate_config, py::arg("config"));
}
