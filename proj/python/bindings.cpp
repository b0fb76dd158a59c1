#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fbmshot/experiments.hpp"
#include "fbmshot/pathspace.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace fbmshot;

namespace {

WalkIncrements increments_from(const std::string& name) {
    if (name == "iid") return WalkIncrements::IidGaussian;
    if (name == "fgn") return WalkIncrements::Fgn;
    if (name == "linear") return WalkIncrements::LinearLongMemory;
    throw std::invalid_argument("increments must be one of 'iid', 'fgn', 'linear'");
}

NegativeTail negative_tail_from(const std::string& name) {
    if (name == "exp") return NegativeTail::Exponential;
    if (name == "pareto") return NegativeTail::Pareto;
    throw std::invalid_argument("negative tail must be 'exp' or 'pareto'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "maximum processes of perturbed random walks and their shot-noise limits";

    py::class_<GridPath>(m, "GridPath")
        .def(py::init<std::size_t, std::vector<double>>(), "n_points"_a, "values"_a)
        .def_readonly("n_points", &GridPath::n_points)
        .def_readonly("values", &GridPath::values)
        .def("time_at", &GridPath::time_at, "j"_a)
        .def("value_at", &GridPath::value_at, "t"_a)
        .def("running_max", &GridPath::running_max)
        .def("__len__", [](const GridPath& p) { return p.values.size(); });

    py::class_<NoiseParams>(m, "NoiseParams")
        .def_static(
            "pure_pareto",
            [](double hurst, double kappa) {
                return NoiseParams::pure_pareto(Hurst(hurst), kappa);
            },
            "hurst"_a, "kappa"_a)
        .def_static(
            "shifted_pareto",
            [](double hurst, double kappa) {
                return NoiseParams::shifted_pareto(Hurst(hurst), kappa);
            },
            "hurst"_a, "kappa"_a)
        .def_static(
            "two_sided",
            [](double hurst, double kappa0, double theta, const std::string& tail) {
                return NoiseParams::two_sided(Hurst(hurst), kappa0, theta,
                                              negative_tail_from(tail));
            },
            "hurst"_a, "kappa0"_a, "theta"_a, "negative_tail"_a = "exp")
        .def_property_readonly("kappa", &NoiseParams::kappa)
        .def_property_readonly("kappa0", &NoiseParams::kappa0)
        .def_property_readonly("theta", &NoiseParams::theta)
        .def_property_readonly("hurst",
                               [](const NoiseParams& p) { return p.hurst().value(); });

    py::class_<PointSet>(m, "PointSet")
        .def_property_readonly("etas",
                               [](const PointSet& ps) {
                                   std::vector<double> v;
                                   for (const auto& p : ps.points) v.push_back(p.eta);
                                   return v;
                               })
        .def_property_readonly("us",
                               [](const PointSet& ps) {
                                   std::vector<double> v;
                                   for (const auto& p : ps.points) v.push_back(p.u);
                                   return v;
                               })
        .def_property_readonly("signs",
                               [](const PointSet& ps) {
                                   std::vector<int> v;
                                   for (const auto& p : ps.points) v.push_back(p.sign);
                                   return v;
                               })
        .def_readonly("gamma", &PointSet::gamma)
        .def("gamma_last", &PointSet::gamma_last)
        .def("__len__", [](const PointSet& ps) { return ps.points.size(); });

    py::class_<PerturbedWalk>(m, "PerturbedWalk")
        .def_readonly("s", &PerturbedWalk::s)
        .def_readonly("y", &PerturbedWalk::y)
        .def("n", &PerturbedWalk::n);

    py::class_<LimitPathSample>(m, "LimitPathSample")
        .def_readonly("path", &LimitPathSample::path)
        .def_readonly("fbm", &LimitPathSample::fbm)
        .def_readonly("points", &LimitPathSample::points)
        .def_readonly("truncation_bound", &LimitPathSample::truncation_bound);

    py::class_<PsiEstimate>(m, "PsiEstimate")
        .def_readonly("x", &PsiEstimate::x)
        .def_readonly("value", &PsiEstimate::value)
        .def_readonly("std_error", &PsiEstimate::std_error)
        .def_readonly("replicates", &PsiEstimate::replicates)
        .def_readonly("grid_points", &PsiEstimate::grid_points);

    py::class_<FddQuery>(m, "FddQuery")
        .def(py::init<std::vector<double>, std::vector<double>>(), "times"_a,
             "thresholds"_a)
        .def_property_readonly("times", &FddQuery::times)
        .def_property_readonly("thresholds", &FddQuery::thresholds)
        .def_property_readonly("suffix_mins", &FddQuery::suffix_mins);

    py::class_<FddEstimate>(m, "FddEstimate")
        .def_readonly("value", &FddEstimate::value)
        .def_readonly("std_error", &FddEstimate::std_error)
        .def_readonly("replicates", &FddEstimate::replicates);

    py::class_<KsReport>(m, "KsReport")
        .def_readonly("statistic", &KsReport::statistic)
        .def_readonly("p_value", &KsReport::p_value)
        .def_readonly("n1", &KsReport::n1)
        .def_readonly("n2", &KsReport::n2)
        .def_readonly("two_sample", &KsReport::two_sample);

    m.def(
        "fbm_covariance",
        [](double hurst, double s, double t) {
            return fbm_covariance(Hurst(hurst), s, t);
        },
        "hurst"_a, "s"_a, "t"_a);
    m.def(
        "sample_fgn",
        [](double hurst, std::size_t n, std::uint64_t seed) {
            return sample_fgn(Hurst(hurst), n, seed);
        },
        "hurst"_a, "n"_a, "seed"_a);
    m.def(
        "fbm_path",
        [](double hurst, std::size_t n_points, std::uint64_t seed) {
            return fbm_path(Hurst(hurst), n_points, seed);
        },
        "hurst"_a, "n_points"_a, "seed"_a);

    m.def("sample_perturbation", &sample_perturbation, "params"_a, "u"_a);
    m.def("max_order_statistic_cdf", &max_order_statistic_cdf, "params"_a, "n"_a, "x"_a);
    m.def("sample_point_process", &sample_point_process, "params"_a, "k"_a, "seed"_a);
    m.def("extremal_process", &extremal_process, "point_set"_a, "t"_a);

    m.def(
        "simulate_walk",
        [](const std::string& increments, double hurst, std::size_t n,
           const NoiseParams& noise, std::uint64_t seed) {
            return simulate_walk(WalkSpec(increments_from(increments), Hurst(hurst), n),
                                 noise, seed);
        },
        "increments"_a, "hurst"_a, "n"_a, "noise"_a, "seed"_a);
    m.def("max_process", &max_process, "walk"_a);
    m.def(
        "scaled_path",
        [](const std::vector<double>& m_seq, std::size_t n, double hurst) {
            return scaled_path(m_seq, n, Hurst(hurst));
        },
        "m"_a, "n"_a, "hurst"_a);
    m.def(
        "truncated_scaled_path",
        [](const PerturbedWalk& w, std::size_t k, double hurst) {
            return truncated_scaled_path(w, k, Hurst(hurst));
        },
        "walk"_a, "k"_a, "hurst"_a);
    m.def(
        "one_sided_paths",
        [](const PerturbedWalk& w, double hurst) {
            return one_sided_paths(w, Hurst(hurst));
        },
        "walk"_a, "hurst"_a);
    m.def(
        "sandwich_middle_path",
        [](const PerturbedWalk& w, double hurst) {
            return sandwich_middle_path(w, Hurst(hurst));
        },
        "walk"_a, "hurst"_a);
    m.def("longest_nonneg_gap", &longest_nonneg_gap, "y"_a);

    m.def(
        "sample_limit_path",
        [](double hurst, double kappa, std::size_t k, std::size_t n_points,
           std::uint64_t seed) {
            return sample_limit_path(Hurst(hurst), kappa, k, n_points, seed);
        },
        "hurst"_a, "kappa"_a, "k"_a, "n_points"_a, "seed"_a);
    m.def(
        "psi_estimate",
        [](double hurst, double kappa, double x, std::size_t replicates,
           std::size_t grid_points, std::uint64_t seed, int threads) {
            return psi_estimate(Hurst(hurst), kappa, x, replicates, grid_points, seed,
                                threads);
        },
        "hurst"_a, "kappa"_a, "x"_a, "replicates"_a, "grid_points"_a, "seed"_a,
        "threads"_a = 1);
    m.def(
        "psi_curve",
        [](double hurst, double kappa, const std::vector<double>& xs,
           std::size_t replicates, std::size_t grid_points, std::uint64_t seed,
           int threads) {
            return psi_curve(Hurst(hurst), kappa, xs, replicates, grid_points, seed,
                             threads);
        },
        "hurst"_a, "kappa"_a, "xs"_a, "replicates"_a, "grid_points"_a, "seed"_a,
        "threads"_a = 1);
    m.def(
        "fdd_estimate",
        [](double hurst, double kappa, const FddQuery& q, std::size_t replicates,
           std::size_t grid_points, std::uint64_t seed, int threads) {
            return fdd_estimate(Hurst(hurst), kappa, q, replicates, grid_points, seed,
                                threads);
        },
        "hurst"_a, "kappa"_a, "query"_a, "replicates"_a, "grid_points"_a, "seed"_a,
        "threads"_a = 1);
    m.def(
        "fdd_probability",
        [](double hurst, double kappa, const FddQuery& q, std::size_t replicates,
           std::size_t grid_points, std::uint64_t seed, int threads) {
            return fdd_probability(Hurst(hurst), kappa, q, replicates, grid_points, seed,
                                   threads);
        },
        "hurst"_a, "kappa"_a, "query"_a, "replicates"_a, "grid_points"_a, "seed"_a,
        "threads"_a = 1);
    m.def(
        "self_similarity_test",
        [](double hurst, double kappa, double a, std::size_t samples, std::uint64_t seed,
           std::size_t k, std::size_t grid_points, int threads) {
            return self_similarity_test(Hurst(hurst), kappa, a, samples, seed, k,
                                        grid_points, threads);
        },
        "hurst"_a, "kappa"_a, "a"_a, "samples"_a, "seed"_a, "k"_a = 64,
        "grid_points"_a = 4096, "threads"_a = 1);

    m.def("sup_distance", &sup_distance, "x"_a, "y"_a, "a"_a = 0.0, "b"_a = 1.0);
    m.def("skorohod_j1", &skorohod_j1, "x"_a, "y"_a, "a"_a = 0.0, "b"_a = 1.0);
    m.def("uniform_modulus", &uniform_modulus, "x"_a, "delta"_a);
    m.def("partition_modulus", &partition_modulus, "x"_a, "delta"_a);
    m.def("max_jump", &max_jump, "x"_a);

    m.def("ks_two_sample", &ks_two_sample, "a"_a, "b"_a);
    m.def("ks_vs_cdf", &ks_vs_cdf, "a"_a, "cdf"_a);
}
