#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wdmxpm/capacity.hpp"
#include "wdmxpm/channel.hpp"
#include "wdmxpm/config.hpp"
#include "wdmxpm/pathint.hpp"
#include "wdmxpm/propagator.hpp"
#include "wdmxpm/report_io.hpp"
#include "wdmxpm/rng.hpp"
#include "wdmxpm/version.hpp"
#include "wdmxpm/xpm_stats.hpp"

namespace py = pybind11;
using namespace wdmxpm;

PYBIND11_MODULE(_core, m) {
  m.doc() = "WDM fiber XPM phase-noise simulation and capacity toolkit";
  m.attr("__version__") = kVersion;

  py::class_<LinkConfig>(m, "LinkConfig")
      .def(py::init<>())
      .def_readwrite("beta2", &LinkConfig::beta2)
      .def_readwrite("gamma", &LinkConfig::gamma)
      .def_readwrite("alpha", &LinkConfig::alpha)
      .def_readwrite("length_km", &LinkConfig::length_km)
      .def_readwrite("group_velocity", &LinkConfig::group_velocity)
      .def_readwrite("n_channels", &LinkConfig::n_channels)
      .def_readwrite("channel_spacing", &LinkConfig::channel_spacing)
      .def_readwrite("channel_power", &LinkConfig::channel_power)
      .def("beta1_slope", &LinkConfig::beta1_slope);

  py::class_<SimGrid>(m, "SimGrid")
      .def(py::init<>())
      .def_readwrite("t_window", &SimGrid::t_window)
      .def_readwrite("n_time", &SimGrid::n_time)
      .def_readwrite("n_zsteps", &SimGrid::n_zsteps)
      .def("dt", &SimGrid::dt)
      .def("dz", &SimGrid::dz)
      .def("time_at", &SimGrid::time_at);

  m.def("validate", &validate, py::arg("link"), py::arg("grid"));
  m.def("serialize_config", &serialize_config);
  m.def("parse_config", [](const std::string& text) {
    const Scenario s = parse_config(text);
    return py::make_tuple(s.link, s.grid);
  });

  py::class_<SignalGrid>(m, "SignalGrid")
      .def(py::init<>())
      .def_readwrite("samples", &SignalGrid::samples)
      .def_readwrite("grid", &SignalGrid::grid)
      .def_readwrite("channel_index", &SignalGrid::channel_index);
  m.def("average_power", &average_power);
  m.def("signal_energy", &signal_energy);

  py::class_<PotentialField>(m, "PotentialField")
      .def(py::init<>())
      .def_readwrite("values", &PotentialField::values)
      .def_readwrite("grid", &PotentialField::grid)
      .def_readwrite("correlation_convention",
                     &PotentialField::correlation_convention)
      .def_readwrite("spectral_density", &PotentialField::spectral_density);

  m.def("xpm_potential_from_signals", &xpm_potential_from_signals,
        py::arg("neighbor_signals"), py::arg("link"), py::arg("z"));
  m.def("harmonic_number", &harmonic_number);
  m.def("sigma_nu_sq", &sigma_nu_sq, py::arg("link"),
        py::arg("use_log_approx") = false);
  m.def("sample_surrogate_potential", &sample_surrogate_potential,
        py::arg("grid"), py::arg("sigma_nu_sq"), py::arg("seed"));

  py::class_<PotentialMoments>(m, "PotentialMoments")
      .def_readonly("mean", &PotentialMoments::mean)
      .def_readonly("overall_mean", &PotentialMoments::overall_mean)
      .def_readonly("overall_variance", &PotentialMoments::overall_variance)
      .def_readonly("n_slices", &PotentialMoments::n_slices);
  m.def("empirical_potential_moments", &empirical_potential_moments);

  m.def("propagate_coupled", &propagate_coupled, py::arg("inputs"),
        py::arg("link"), py::arg("grid"));
  m.def("propagate_surrogate", &propagate_surrogate, py::arg("x0"),
        py::arg("potential"), py::arg("link"));
  m.def("free_propagator", &free_propagator, py::arg("t"), py::arg("t_prime"),
        py::arg("link"));
  m.def("chirp_transform", &chirp_transform, py::arg("x"), py::arg("link"),
        py::arg("inverse") = false);

  py::class_<GreenEvaluation>(m, "GreenEvaluation")
      .def_readonly("value", &GreenEvaluation::value)
      .def_readonly("t", &GreenEvaluation::t)
      .def_readonly("t_prime", &GreenEvaluation::t_prime)
      .def_readonly("m_steps", &GreenEvaluation::m_steps)
      .def_readonly("potential_ref", &GreenEvaluation::potential_ref);

  py::class_<UStatistics>(m, "UStatistics")
      .def_readonly("sample_mean", &UStatistics::sample_mean)
      .def_readonly("sample_variance", &UStatistics::sample_variance)
      .def_readonly("n_trials", &UStatistics::n_trials)
      .def_readonly("target_variance", &UStatistics::target_variance)
      .def_readonly("gaussianity_pvalue", &UStatistics::gaussianity_pvalue)
      .def_readonly("pvalue_real", &UStatistics::pvalue_real)
      .def_readonly("pvalue_imag", &UStatistics::pvalue_imag)
      .def_readonly("mean_stderr", &UStatistics::mean_stderr)
      .def_readonly("t", &UStatistics::t)
      .def_readonly("t_prime", &UStatistics::t_prime)
      .def_readonly("seed", &UStatistics::seed);

  m.def("green_discrete", &green_discrete, py::arg("t"), py::arg("t_prime"),
        py::arg("potential"), py::arg("link"), py::arg("m_steps"));
  m.def("compute_U", &compute_U, py::arg("potential"), py::arg("t"),
        py::arg("t_prime"), py::arg("link"), py::arg("alpha_steps") = 32,
        py::arg("time_refine") = 1);
  m.def("validate_U_distribution", &validate_U_distribution, py::arg("link"),
        py::arg("grid"), py::arg("t"), py::arg("t_prime"), py::arg("n_trials"),
        py::arg("seed"), py::arg("sigma_nu_sq_override") = std::nullopt);
  m.def("green_resummed", &green_resummed, py::arg("t"), py::arg("t_prime"),
        py::arg("u_value"), py::arg("link"));
  m.def("normality_pvalue", &normality_pvalue);
  m.def("format_u_statistics", &format_u_statistics);

  py::class_<PhaseNoiseChannelSpec>(m, "PhaseNoiseChannelSpec")
      .def(py::init<>())
      .def_readwrite("sigma_U_sq", &PhaseNoiseChannelSpec::sigma_U_sq)
      .def_readwrite("sigma_N_sq", &PhaseNoiseChannelSpec::sigma_N_sq)
      .def_readwrite("seed", &PhaseNoiseChannelSpec::seed);
  m.def("sigma_U_sq_lumped", &sigma_U_sq_lumped, py::arg("sigma_nu_sq"),
        py::arg("link"));
  m.def("apply_lumped_channel", &apply_lumped_channel, py::arg("x_tilde"),
        py::arg("spec"));
  m.def("discrete_channel", &discrete_channel, py::arg("x_seq"),
        py::arg("spec"),
        py::arg("max_power") = std::numeric_limits<double>::infinity());
  m.def("format_symbols", &format_symbols);

  m.def("gaussian_differential_entropy", &gaussian_differential_entropy);
  m.def("nats_to_bits", &nats_to_bits);
  m.def("capacity_bound_entropy_form", &capacity_bound_entropy_form,
        py::arg("p"), py::arg("sigma_n_sq"), py::arg("h_u"));
  m.def("param_form_coefficient", &param_form_coefficient, py::arg("link"),
        py::arg("exact_harmonic") = false);
  m.def("capacity_bound_param_form", &capacity_bound_param_form,
        py::arg("link"), py::arg("p"), py::arg("sigma_n_sq"),
        py::arg("exact_harmonic") = false);
  m.def("sigma_U_sq_high_snr", &sigma_U_sq_high_snr, py::arg("link"),
        py::arg("p"), py::arg("exact_harmonic") = false);

  py::class_<CapacityRow>(m, "CapacityRow")
      .def_readonly("sweep_value", &CapacityRow::sweep_value)
      .def_readonly("bound_entropy_nats", &CapacityRow::bound_entropy_nats)
      .def_readonly("bound_param_nats", &CapacityRow::bound_param_nats)
      .def_readonly("coefficient", &CapacityRow::coefficient)
      .def_readonly("mi_estimate", &CapacityRow::mi_estimate)
      .def_readonly("mi_stderr", &CapacityRow::mi_stderr);
  py::class_<CapacityReport>(m, "CapacityReport")
      .def_readonly("sweep_variable", &CapacityReport::sweep_variable)
      .def_readonly("rows", &CapacityReport::rows)
      .def_readonly("sigma_n_sq", &CapacityReport::sigma_n_sq)
      .def_readonly("seed", &CapacityReport::seed);
  m.def("capacity_sweep", &capacity_sweep, py::arg("link"),
        py::arg("sweep_variable"), py::arg("grid"), py::arg("sigma_n_sq"));

  py::class_<MiEstimate>(m, "MiEstimate")
      .def_readonly("mi_nats", &MiEstimate::mi_nats)
      .def_readonly("stderr_nats", &MiEstimate::stderr_nats)
      .def_readonly("n_samples", &MiEstimate::n_samples);
  m.def("mi_monte_carlo", &mi_monte_carlo, py::arg("constellation"),
        py::arg("probabilities"), py::arg("spec"), py::arg("n_samples"),
        py::arg("seed"),
        py::arg("max_power") = std::numeric_limits<double>::infinity());
  m.def("format_capacity_report", &format_capacity_report);

  m.def("derive_seed", &derive_seed, py::arg("master"), py::arg("stream"));
}
