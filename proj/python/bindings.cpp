#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pamc/pamc.hpp"

namespace py = pybind11;

namespace {

std::vector<int> to_list(const pamc::SpinConfiguration& s) {
  return {s.spins().begin(), s.spins().end()};
}

pamc::SpinConfiguration from_list(const std::vector<int>& spins) {
  std::vector<pamc::Spin> narrowed;
  narrowed.reserve(spins.size());
  for (int v : spins) {
    if (v != 1 && v != -1) throw py::value_error("spins must be -1 or +1");
    narrowed.push_back(static_cast<pamc::Spin>(v));
  }
  return pamc::SpinConfiguration(std::move(narrowed));
}

py::dict step_to_dict(const pamc::StepRecord& s) {
  py::dict d;
  d["step"] = s.step;
  d["beta"] = s.beta;
  d["delta_beta"] = s.delta_beta;
  d["ess_ratio"] = s.ess_ratio;
  d["mean_energy"] = s.mean_energy;
  d["min_energy"] = s.min_energy;
  d["best_cut"] = s.best_cut;
  d["acceptance"] = s.acceptance;
  d["kicked"] = s.kicked;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Population annealing Monte Carlo for Max-Cut";

  py::register_exception<pamc::GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<pamc::HexFormatError>(m, "HexFormatError", PyExc_ValueError);
  py::register_exception<pamc::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<pamc::FetchError>(m, "FetchError", PyExc_RuntimeError);

  py::class_<pamc::Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<std::tuple<int, int, int>>& edges) {
             std::vector<pamc::Edge> list;
             list.reserve(edges.size());
             for (auto [u, v, w] : edges) {
               if (u < 0 || v < 0) throw py::value_error("node indices must be non-negative");
               list.push_back({static_cast<pamc::NodeIndex>(u), static_cast<pamc::NodeIndex>(v), w});
             }
             return pamc::Graph(n, std::move(list));
           }),
           py::arg("num_nodes"), py::arg("edges"), "Graph from 0-based (u, v, w) edges.")
      .def_static("from_gset", [](const std::string& text) { return pamc::parse_gset(text); },
                  py::arg("text"), "Parse G-set text (1-based endpoints).")
      .def_static("load", &pamc::load_gset, py::arg("path"))
      .def_property_readonly("num_nodes", &pamc::Graph::num_nodes)
      .def_property_readonly("num_edges", &pamc::Graph::num_edges)
      .def_property_readonly("total_weight", &pamc::Graph::total_weight)
      .def("edges", [](const pamc::Graph& g) {
        std::vector<std::tuple<int, int, int>> out;
        for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
        return out;
      })
      .def("to_gset", &pamc::to_gset)
      .def("__eq__", [](const pamc::Graph& a, const pamc::Graph& b) { return a == b; });

  m.def("cut_value", [](const pamc::Graph& g, const std::vector<int>& s) {
    return pamc::cut_value(g, from_list(s));
  }, py::arg("graph"), py::arg("spins"));
  m.def("ising_energy", [](const pamc::Graph& g, const std::vector<int>& s) {
    return pamc::ising_energy(g, from_list(s));
  }, py::arg("graph"), py::arg("spins"));
  m.def("flip_delta", [](const pamc::Graph& g, const std::vector<int>& s, pamc::NodeIndex i) {
    return pamc::flip_delta(g, from_list(s), i);
  }, py::arg("graph"), py::arg("spins"), py::arg("node"));
  m.def("cut_from_energy", py::overload_cast<const pamc::Graph&, pamc::Energy>(&pamc::cut_from_energy),
        py::arg("graph"), py::arg("energy"));

  m.def("decode_hex", [](const std::string& hex, std::size_t n) {
    return to_list(pamc::decode_hex(hex, n));
  }, py::arg("hex"), py::arg("num_nodes"));
  m.def("encode_hex", [](const std::vector<int>& s) { return pamc::encode_hex(from_list(s)); },
        py::arg("spins"));
  m.def("random_config", [](std::size_t n, std::uint64_t seed) {
    pamc::Rng rng = pamc::Rng::for_stream(seed, 0, 0, pamc::StreamPurpose::user);
    return to_list(pamc::random_config(n, rng));
  }, py::arg("num_nodes"), py::arg("seed"));

  m.def("reweight", [](const std::vector<pamc::Energy>& e, double db) { return pamc::reweight(e, db); },
        py::arg("energies"), py::arg("delta_beta"));
  m.def("effective_sample_size", [](const std::vector<double>& w) {
    return pamc::effective_sample_size(w);
  }, py::arg("weights"));
  m.def("choose_delta_beta", [](const std::vector<pamc::Energy>& e, double beta, double target,
                                double beta_end) {
    return pamc::choose_delta_beta(e, beta, target, beta_end);
  }, py::arg("energies"), py::arg("beta"), py::arg("target_ess_ratio"), py::arg("beta_end"));

  py::class_<pamc::EngineConfig>(m, "EngineConfig")
      .def(py::init([](const py::kwargs& kwargs) {
        pamc::EngineConfig c;
        for (auto [key, value] : kwargs) {
          std::string text = py::isinstance<py::bool_>(value)
                                 ? (value.cast<bool>() ? "true" : "false")
                                 : py::str(value).cast<std::string>();
          pamc::set_config_value(c, key.cast<std::string>(), text);
        }
        return c;
      }))
      .def_readwrite("population_size", &pamc::EngineConfig::population_size)
      .def_readwrite("sweeps_per_step", &pamc::EngineConfig::sweeps_per_step)
      .def_readwrite("target_ess_ratio", &pamc::EngineConfig::target_ess_ratio)
      .def_readwrite("beta_start", &pamc::EngineConfig::beta_start)
      .def_readwrite("beta_end", &pamc::EngineConfig::beta_end)
      .def_readwrite("max_steps", &pamc::EngineConfig::max_steps)
      .def_readwrite("kick_period", &pamc::EngineConfig::kick_period)
      .def_readwrite("kick_fraction", &pamc::EngineConfig::kick_fraction)
      .def_readwrite("acceptance_floor", &pamc::EngineConfig::acceptance_floor)
      .def_readwrite("seed", &pamc::EngineConfig::seed)
      .def_readwrite("patience", &pamc::EngineConfig::patience)
      .def_readwrite("min_delta_beta", &pamc::EngineConfig::min_delta_beta)
      .def_readwrite("resampling", &pamc::EngineConfig::resampling)
      .def_readwrite("workers", &pamc::EngineConfig::workers)
      .def_readwrite("time_limit", &pamc::EngineConfig::time_limit)
      .def_readwrite("check_energies", &pamc::EngineConfig::check_energies)
      .def("validate", &pamc::EngineConfig::validate);

  py::class_<pamc::RunResult>(m, "RunResult")
      .def_readonly("best_cut", &pamc::RunResult::best_cut)
      .def_property_readonly("best_config", [](const pamc::RunResult& r) { return to_list(r.best_config); })
      .def_property_readonly("best_hex", [](const pamc::RunResult& r) { return pamc::encode_hex(r.best_config); })
      .def_readonly("beta_trajectory", &pamc::RunResult::beta_trajectory)
      .def_readonly("ess_trajectory", &pamc::RunResult::ess_trajectory)
      .def_readonly("acceptance_trajectory", &pamc::RunResult::acceptance_trajectory)
      .def_property_readonly("steps", [](const pamc::RunResult& r) {
        py::list out;
        for (const auto& s : r.steps) out.append(step_to_dict(s));
        return out;
      })
      .def_readonly("log_partition_ratio", &pamc::RunResult::log_partition_ratio)
      .def_readonly("wall_time", &pamc::RunResult::wall_time)
      .def_readonly("total_sweeps", &pamc::RunResult::total_sweeps)
      .def("same_outcome", &pamc::RunResult::same_outcome);

  m.def("anneal", [](const pamc::Graph& g, const pamc::EngineConfig& c) {
    py::gil_scoped_release release;
    return pamc::anneal(g, c);
  }, py::arg("graph"), py::arg("config"));

  py::class_<pamc::SolutionRecord>(m, "SolutionRecord")
      .def(py::init([](std::string instance, std::string hex, pamc::Energy claimed, std::string source) {
             return pamc::SolutionRecord{std::move(instance), std::move(hex), claimed, std::move(source)};
           }),
           py::arg("instance"), py::arg("hex"), py::arg("claimed_cut"), py::arg("source") = "")
      .def_readwrite("instance", &pamc::SolutionRecord::instance)
      .def_readwrite("hex", &pamc::SolutionRecord::hex)
      .def_readwrite("claimed_cut", &pamc::SolutionRecord::claimed_cut)
      .def_readwrite("source", &pamc::SolutionRecord::source);
  m.def("published_g63_record", &pamc::published_g63_record, py::return_value_policy::copy);

  py::class_<pamc::VerificationReport>(m, "VerificationReport")
      .def_readonly("instance", &pamc::VerificationReport::instance)
      .def_readonly("nodes", &pamc::VerificationReport::nodes)
      .def_readonly("computed_cut", &pamc::VerificationReport::computed_cut)
      .def_readonly("claimed_cut", &pamc::VerificationReport::claimed_cut)
      .def_readonly("match", &pamc::VerificationReport::match);
  m.def("verify_record", [](const pamc::SolutionRecord& rec, const pamc::Graph& g) {
    return pamc::verify_record(rec, g);
  }, py::arg("record"), py::arg("graph"));

  m.def("default_cache_dir", &pamc::default_cache_dir);
  m.def("cached_instance", [](const std::string& name, const std::filesystem::path& dir) {
    return pamc::cached_instance(pamc::InstanceCatalog::builtin(), name, dir);
  }, py::arg("name"), py::arg("cache_dir"));
  m.def("fetch_instance", [](const std::string& name, const std::filesystem::path& dir) {
    pamc::CurlDownloader downloader;
    return pamc::fetch_instance(pamc::InstanceCatalog::builtin(), name, dir, downloader);
  }, py::arg("name"), py::arg("cache_dir"));
}
