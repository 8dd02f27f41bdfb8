#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "divex/harness.hpp"

namespace py = pybind11;

using namespace divex;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Diversity-driven selection of exploration strategies";

  py::class_<Box>(m, "Box")
      .def(py::init<std::vector<double>, std::vector<double>>(),
           py::arg("lo"), py::arg("hi"))
      .def_static("centered", &Box::centered, py::arg("half_width"),
                  py::arg("dim"))
      .def_readwrite("lo", &Box::lo)
      .def_readwrite("hi", &Box::hi)
      .def("dim", &Box::dim)
      .def("volume", &Box::volume);

  py::class_<MotorSpace>(m, "MotorSpace")
      .def_static("symmetric", &MotorSpace::symmetric, py::arg("joints"),
                  py::arg("limit_deg"))
      .def_readwrite("lo", &MotorSpace::lo)
      .def_readwrite("hi", &MotorSpace::hi)
      .def("dim", &MotorSpace::dim);

  py::class_<ArmSpec>(m, "ArmSpec")
      .def(py::init([](int joint_count, double segment_length,
                       double joint_limit) {
             ArmSpec arm{joint_count, segment_length, joint_limit};
             arm.validate();
             return arm;
           }),
           py::arg("joint_count") = 20, py::arg("segment_length") = 0.05,
           py::arg("joint_limit") = 150.0)
      .def_readwrite("joint_count", &ArmSpec::joint_count)
      .def_readwrite("segment_length", &ArmSpec::segment_length)
      .def_readwrite("joint_limit", &ArmSpec::joint_limit)
      .def("reach", &ArmSpec::reach)
      .def("motor_space", &ArmSpec::motor_space);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform", py::overload_cast<>(&Rng::uniform))
      .def("uniform", py::overload_cast<double, double>(&Rng::uniform),
           py::arg("a"), py::arg("b"));

  m.def("ball_volume", &ball_volume, py::arg("dim"), py::arg("radius"));

  m.def(
      "forward_kinematics",
      [](const ArmSpec& arm, const std::vector<double>& angles) {
        return forward_kinematics(arm, MotorCommand{angles}).coords;
      },
      py::arg("arm"), py::arg("angles"),
      "End-effector position for one command, degrees in, meters out.");

  m.def(
      "perturb",
      [](const std::vector<double>& angles, double d, const MotorSpace& space,
         Rng& rng) {
        return perturb(MotorCommand{angles}, d, space, rng).angles;
      },
      py::arg("angles"), py::arg("d"), py::arg("space"), py::arg("rng"));

  py::class_<CoverageGrid>(m, "CoverageGrid")
      .def(py::init([](double tau, const Box& bounds, double cell_size) {
             return CoverageGrid(CoverageConfig{tau, bounds, cell_size});
           }),
           py::arg("tau"), py::arg("bounds"), py::arg("cell_size"))
      .def(
          "add_effect",
          [](CoverageGrid& grid, const std::vector<double>& effect) {
            return grid.add_effect(SensoryPoint{effect});
          },
          py::arg("effect"))
      .def("total_coverage", &CoverageGrid::total_coverage)
      .def("covered_cells", &CoverageGrid::covered_cells)
      .def("cell_volume", &CoverageGrid::cell_volume);

  m.def(
      "mc_coverage_oracle",
      [](const std::vector<std::vector<double>>& points, double tau,
         const Box& bounds, std::size_t n_samples, std::uint64_t seed) {
        std::vector<SensoryPoint> ps;
        ps.reserve(points.size());
        for (const auto& p : points) ps.push_back(SensoryPoint{p});
        const McEstimate est =
            mc_coverage_oracle(ps, tau, bounds, n_samples, seed);
        return py::make_tuple(est.estimate, est.std_error);
      },
      py::arg("points"), py::arg("tau"), py::arg("bounds"),
      py::arg("n_samples"), py::arg("seed"),
      "Monte-Carlo union-of-balls area estimate: (estimate, std_error).");

  py::class_<AdaptConfig>(m, "AdaptConfig")
      .def(py::init<>())
      .def_readwrite("alpha", &AdaptConfig::alpha)
      .def_readwrite("window", &AdaptConfig::window)
      .def_readwrite("fictitious_count", &AdaptConfig::fictitious_count)
      .def_readwrite("tau", &AdaptConfig::tau);

  py::class_<CreditLedger>(m, "CreditLedger")
      .def(py::init<std::size_t, AdaptConfig, std::size_t>(),
           py::arg("n_strategies"), py::arg("config"), py::arg("sensory_dim"))
      .def("record", &CreditLedger::record, py::arg("strategy"),
           py::arg("diversity"))
      .def("diversity", &CreditLedger::diversity, py::arg("strategy"))
      .def("diversities", &CreditLedger::diversities)
      .def("fictitious_value", &CreditLedger::fictitious_value);

  m.def(
      "select_strategy",
      [](const std::vector<double>& diversities, double alpha, Rng& rng) {
        const SelectionChoice c = select_strategy(diversities, alpha, rng);
        return py::make_tuple(c.index, c.was_random);
      },
      py::arg("diversities"), py::arg("alpha"), py::arg("rng"),
      "One selection draw: (index, was_random).");

  py::class_<StrategyConfig>(m, "StrategyConfig")
      .def(py::init<>())
      .def_readwrite("type", &StrategyConfig::type)
      .def_readwrite("d", &StrategyConfig::d)
      .def_readwrite("goal_bounds", &StrategyConfig::goal_bounds);

  py::class_<SelectorConfig>(m, "SelectorConfig")
      .def(py::init<>())
      .def_readwrite("type", &SelectorConfig::type)
      .def_readwrite("adapt", &SelectorConfig::adapt)
      .def_readwrite("pure_strategy", &SelectorConfig::pure_strategy)
      .def_readwrite("p", &SelectorConfig::p);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def(py::init<>())
      .def_readwrite("arm", &ExperimentConfig::arm)
      .def_readwrite("strategies", &ExperimentConfig::strategies)
      .def_readwrite("selector", &ExperimentConfig::selector)
      .def_readwrite("n_steps", &ExperimentConfig::n_steps)
      .def_readwrite("eval_tau", &ExperimentConfig::eval_tau)
      .def_readwrite("cell_size", &ExperimentConfig::cell_size)
      .def_readwrite("coverage_bounds", &ExperimentConfig::coverage_bounds)
      .def_readwrite("repetitions", &ExperimentConfig::repetitions)
      .def_readwrite("master_seed", &ExperimentConfig::master_seed)
      .def("validate", &ExperimentConfig::validate);

  m.def("default_experiment", &default_experiment);
  m.def("parse_experiment", &parse_experiment, py::arg("json_text"));
  m.def("experiment_to_json", &experiment_to_json, py::arg("config"));
  m.def("strategy_names", &strategy_names, py::arg("config"));

  py::class_<StepLog>(m, "StepLog")
      .def_readonly("t", &StepLog::t)
      .def_readonly("chosen", &StepLog::chosen)
      .def_readonly("was_random", &StepLog::was_random)
      .def_property_readonly(
          "command", [](const StepLog& s) { return s.command.angles; })
      .def_property_readonly(
          "effect", [](const StepLog& s) { return s.effect.coords; })
      .def_readonly("diversity", &StepLog::diversity)
      .def_readonly("cumulative_coverage", &StepLog::cumulative_coverage)
      .def_readonly("per_strategy_diversity",
                    &StepLog::per_strategy_diversity);

  py::class_<RunRecord>(m, "RunRecord")
      .def_readonly("seed", &RunRecord::seed)
      .def_readonly("strategy_names", &RunRecord::strategy_names)
      .def_readonly("steps", &RunRecord::steps)
      .def("final_coverage", &RunRecord::final_coverage);

  m.def("run_episode", &run_episode, py::arg("config"), py::arg("seed"));
  m.def("episode_seed", &episode_seed, py::arg("master_seed"),
        py::arg("selector_index"), py::arg("repetition"));
  m.def(
      "usage_fraction",
      [](const RunRecord& rec, int strategy, int t_lo, int t_hi) {
        return usage_fraction(rec.steps, strategy, t_lo, t_hi);
      },
      py::arg("record"), py::arg("strategy"), py::arg("t_lo"),
      py::arg("t_hi"));

  py::class_<SelectorOutcome>(m, "SelectorOutcome")
      .def_readonly("selector", &SelectorOutcome::selector)
      .def_readonly("p", &SelectorOutcome::p)
      .def_readonly("d", &SelectorOutcome::d)
      .def_readonly("final_coverages", &SelectorOutcome::final_coverages)
      .def_readonly("mean", &SelectorOutcome::mean)
      .def_readonly("stddev", &SelectorOutcome::stddev)
      .def_readonly("degenerate", &SelectorOutcome::degenerate);

  py::class_<SummaryStats>(m, "SummaryStats")
      .def_readonly("outcomes", &SummaryStats::outcomes);

  py::class_<SweepSpec>(m, "SweepSpec")
      .def(py::init<>())
      .def_readwrite("d_values", &SweepSpec::d_values)
      .def_readwrite("p_grid", &SweepSpec::p_grid)
      .def_readwrite("include_adapt", &SweepSpec::include_adapt)
      .def_readwrite("repetitions", &SweepSpec::repetitions);

  m.def("sweep", &sweep, py::arg("config"), py::arg("spec"));

  m.def(
      "run_and_emit",
      [](const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
         const std::string& format) {
        run_and_emit(cfg, out_dir, parse_report_format(format));
      },
      py::arg("config"), py::arg("out_dir"), py::arg("format") = "csv");
  m.def("sweep_and_emit", &sweep_and_emit, py::arg("config"), py::arg("spec"),
        py::arg("out_dir"));
  m.def("report_directory", &report_directory, py::arg("in_dir"),
        py::arg("out_dir"));
}
