#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include "diqpq/adversary.hpp"
#include "diqpq/bounds.hpp"
#include "diqpq/chsh.hpp"
#include "diqpq/protocol.hpp"
#include "diqpq/rng.hpp"
#include "diqpq/state.hpp"

namespace py = pybind11;
using namespace diqpq;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Finite-sample DI-QPQ simulation and analysis core";

    // state engine
    py::class_<TwoQubitState>(m, "TwoQubitState")
        .def_readonly("amp", &TwoQubitState::amp)
        .def("norm_sq", &TwoQubitState::norm_sq);
    py::class_<ProjectiveBasis>(m, "ProjectiveBasis")
        .def_readonly("angle", &ProjectiveBasis::angle)
        .def("outcome", &ProjectiveBasis::outcome, py::arg("k"));
    py::class_<OutcomeDistribution>(m, "OutcomeDistribution")
        .def_readonly("p", &OutcomeDistribution::p)
        .def("sum", &OutcomeDistribution::sum);
    py::class_<RngStream>(m, "RngStream")
        .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
             py::arg("stream_id"))
        .def("uniform", &RngStream::uniform)
        .def("bit", &RngStream::bit)
        .def("substream", &RngStream::substream, py::arg("id"));
    m.def("make_honest_state", &make_honest_state, py::arg("theta"));
    m.def("make_biased_state", &make_biased_state, py::arg("theta"),
          py::arg("eps_a"));
    m.def("basis_from_angle", &basis_from_angle, py::arg("mu"));
    m.def("joint_distribution", &joint_distribution, py::arg("state"),
          py::arg("first"), py::arg("second"));
    m.def("sample_outcome", &sample_outcome, py::arg("dist"), py::arg("rng"));

    // CHSH analysis
    py::class_<GameAngles>(m, "GameAngles")
        .def(py::init([](double theta, double phi, double psi1, double psi2) {
                 return GameAngles{theta, phi, psi1, psi2};
             }),
             py::arg("theta"), py::arg("phi"), py::arg("psi1"), py::arg("psi2"))
        .def_readonly("theta", &GameAngles::theta)
        .def_readonly("phi", &GameAngles::phi)
        .def_readonly("psi1", &GameAngles::psi1)
        .def_readonly("psi2", &GameAngles::psi2);
    m.def("optimal_angles", &optimal_angles, py::arg("theta"));
    m.def("success_probability", &success_probability, py::arg("theta"),
          py::arg("psi1"), py::arg("psi2"));
    m.def("success_probability_biased", &success_probability_biased,
          py::arg("theta"), py::arg("psi1"), py::arg("psi2"), py::arg("eps_a"));
    m.def("p_max", &p_max, py::arg("theta"));
    m.def("oracle_success_probability", &oracle_success_probability,
          py::arg("state"), py::arg("angles"));
    m.def("pmax_curve", &pmax_curve, py::arg("theta_min"), py::arg("theta_max"),
          py::arg("steps"), py::arg("full_range") = false);

    // concentration bounds
    m.def("chernoff_sample_size", &chernoff_sample_size, py::arg("eps"),
          py::arg("gamma"), py::arg("p"));
    m.def("chsh_deviation_delta", &chsh_deviation_delta, py::arg("m"),
          py::arg("eps_chsh"));
    m.def("qpq_deviation_nu", &qpq_deviation_nu, py::arg("m"), py::arg("n"),
          py::arg("eps_qpq"));
    m.def("serfling_tail", &serfling_tail, py::arg("n"), py::arg("k"),
          py::arg("delta"), py::arg("a"), py::arg("b"));
    m.def("serfling_corollary_deviation", &serfling_corollary_deviation,
          py::arg("n"), py::arg("t"), py::arg("eps"));
    py::class_<ProbabilityInterval>(m, "ProbabilityInterval")
        .def_readonly("lo", &ProbabilityInterval::lo)
        .def_readonly("hi", &ProbabilityInterval::hi)
        .def("contains", &ProbabilityInterval::contains, py::arg("v"));
    m.def("acceptance_interval", &acceptance_interval, py::arg("theta"),
          py::arg("eps"));

    // adversary model
    py::class_<AdversaryConfig>(m, "AdversaryConfig")
        .def(py::init([](double eps_a, long long r,
                         std::optional<double> basis_bias) {
                 return AdversaryConfig{eps_a, r, basis_bias};
             }),
             py::arg("eps_a"), py::arg("r") = -1,
             py::arg("basis_bias") = py::none())
        .def_readwrite("eps_a", &AdversaryConfig::eps_a)
        .def_readwrite("r", &AdversaryConfig::r)
        .def_readwrite("basis_bias", &AdversaryConfig::basis_bias)
        .def("effective_basis_bias", &AdversaryConfig::effective_basis_bias);
    m.def("bias_threshold_paper", &bias_threshold_paper, py::arg("theta"),
          py::arg("eps"));
    m.def("bias_threshold_exact", &bias_threshold_exact, py::arg("theta"),
          py::arg("eps"));
    m.def("bias_threshold_partial", &bias_threshold_partial, py::arg("theta"),
          py::arg("eps"), py::arg("r"), py::arg("n"));
    m.def("leakage_fraction", &leakage_fraction, py::arg("theta"),
          py::arg("eps_a"));
    m.def("additional_leakage", &additional_leakage, py::arg("theta"),
          py::arg("eps_a"));

    // protocol engine
    py::class_<ProtocolParams>(m, "ProtocolParams")
        .def_static("defaults", &ProtocolParams::defaults, py::arg("theta"),
                    py::arg("eps"), py::arg("gamma"))
        .def_readwrite("theta", &ProtocolParams::theta)
        .def_readwrite("eps", &ProtocolParams::eps)
        .def_readwrite("gamma", &ProtocolParams::gamma)
        .def_readwrite("eps_chsh", &ProtocolParams::eps_chsh)
        .def_readwrite("eps_qpq", &ProtocolParams::eps_qpq)
        .def_readwrite("n", &ProtocolParams::n)
        .def_readwrite("m", &ProtocolParams::m);
    py::enum_<Decision>(m, "Decision")
        .value("Accept", Decision::Accept)
        .value("Abort", Decision::Abort);
    py::class_<KeyTranscript>(m, "KeyTranscript")
        .def_readonly("bob_bits", &KeyTranscript::bob_bits)
        .def_readonly("alice_results", &KeyTranscript::alice_results)
        .def("conclusive_count", &KeyTranscript::conclusive_count)
        .def("conclusive_fraction", &KeyTranscript::conclusive_fraction);
    py::class_<Transcript>(m, "Transcript")
        .def_readonly("params", &Transcript::params)
        .def_readonly("adversary", &Transcript::adversary)
        .def_readonly("chsh_indices", &Transcript::chsh_indices)
        .def_readonly("qpq_indices", &Transcript::qpq_indices)
        .def_readonly("test_statistic", &Transcript::test_statistic)
        .def_readonly("decision", &Transcript::decision)
        .def_readonly("key", &Transcript::key)
        .def_readonly("seed", &Transcript::seed)
        .def("to_json", &transcript_to_json, py::arg("include_rounds") = false);
    py::class_<MonteCarloSummary>(m, "MonteCarloSummary")
        .def_readonly("trials", &MonteCarloSummary::trials)
        .def_readonly("acceptance_rate", &MonteCarloSummary::acceptance_rate)
        .def_readonly("mean_statistic", &MonteCarloSummary::mean_statistic)
        .def_readonly("stddev_statistic", &MonteCarloSummary::stddev_statistic)
        .def_readonly("mean_conclusive_fraction",
                      &MonteCarloSummary::mean_conclusive_fraction)
        .def_readonly("mean_known_fraction",
                      &MonteCarloSummary::mean_known_fraction);
    m.def("run_protocol", &run_protocol, py::arg("params"), py::arg("adversary"),
          py::arg("seed"));
    m.def("verify_theorem1", &verify_theorem1, py::arg("theta"), py::arg("m"),
          py::arg("n"), py::arg("trials"), py::arg("eps_qpq"), py::arg("seed"),
          py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("monte_carlo_summary", &monte_carlo_summary, py::arg("params"),
          py::arg("adversary"), py::arg("trials"), py::arg("seed"),
          py::arg("threads") = 1,
          py::call_guard<py::gil_scoped_release>());
    m.def("derive_trial_seed", &derive_trial_seed, py::arg("seed"),
          py::arg("index"));
}
