#include "nkze/config.hpp"
#include "nkze/engine.hpp"
#include "nkze/error.hpp"
#include "nkze/io.hpp"
#include "nkze/landscape.hpp"
#include "nkze/structc.hpp"
#include "nkze/verify.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace nkze;

namespace {

template <class P> P to_policy(const py::object& obj) {
    if (py::isinstance<py::str>(obj)) return P::from_string(obj.cast<std::string>());
    P out(py::len(obj));
    std::size_t i = 0;
    for (auto item : obj) out.set(i++, item.cast<int>() != 0);
    return out;
}

py::dict records_to_dict(const std::vector<FirmRecord>& recs) {
    std::vector<std::uint32_t> run, iteration, firm;
    std::vector<std::string> role;
    std::vector<std::int32_t> gid;
    std::vector<std::uint16_t> gsize, gshapers;
    std::vector<double> fitness;
    for (const auto& r : recs) {
        run.push_back(r.run);
        iteration.push_back(r.iteration);
        firm.push_back(r.firm_id);
        role.emplace_back(to_string(r.role));
        gid.push_back(r.group_id);
        gsize.push_back(r.group_size);
        gshapers.push_back(r.group_shapers);
        fitness.push_back(r.fitness);
    }
    py::dict d;
    d["run"] = run;
    d["iteration"] = iteration;
    d["firm_id"] = firm;
    d["role"] = role;
    d["group_id"] = gid;
    d["group_size"] = gsize;
    d["group_shapers"] = gshapers;
    d["fitness"] = fitness;
    return d;
}

py::dict result_to_dict(const CellResult& r) {
    py::dict d;
    d["cell_id"] = r.cell.id;
    d["model"] = std::string(to_string(r.cell.config.model));
    d["replications"] = r.replications;
    d["error"] = r.error;
    d["records"] = records_to_dict(r.records);
    py::dict aggs;
    for (const auto& series : r.aggregates) {
        std::vector<std::size_t> it;
        std::vector<double> mean, ci;
        for (const auto& p : series.points) {
            it.push_back(p.iteration);
            mean.push_back(p.summary.mean);
            ci.push_back(p.summary.ci95_half.value_or(std::numeric_limits<double>::quiet_NaN()));
        }
        py::dict s;
        s["iteration"] = it;
        s["mean"] = mean;
        s["ci95_half"] = ci;
        aggs[py::str(series.selector)] = s;
    }
    d["aggregates"] = aggs;
    return d;
}

py::list run_spec(const ExperimentSpec& spec, std::size_t jobs) {
    std::vector<CellResult> res;
    {
        py::gil_scoped_release release;
        res = run_experiment(spec.cells, jobs);
    }
    py::list out;
    for (const auto& r : res) out.append(result_to_dict(r));
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "NKZE landscape and firm-adaptation simulations";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Landscape>(m, "Landscape")
        .def(py::init([](std::size_t N, std::size_t K, std::size_t Z, std::size_t E, std::uint64_t seed) {
                 return Landscape(LandscapeConfig{N, K, Z, E, seed});
             }),
             py::arg("N") = 12, py::arg("K") = 0, py::arg("Z") = 12, py::arg("E") = 0, py::arg("seed") = 0)
        .def_property_readonly("N", &Landscape::N)
        .def_property_readonly("K", &Landscape::K)
        .def_property_readonly("Z", &Landscape::Z)
        .def_property_readonly("E", &Landscape::E)
        .def_property_readonly("rows", &Landscape::rows)
        .def_property_readonly("materialized", &Landscape::materialized)
        .def("search_neighbors",
             [](const Landscape& l, std::size_t i) {
                 auto s = l.search_neighbors(i);
                 return std::vector<std::size_t>(s.begin(), s.end());
             })
        .def("shape_neighbors",
             [](const Landscape& l, std::size_t i) {
                 auto s = l.shape_neighbors(i);
                 return std::vector<std::size_t>(s.begin(), s.end());
             })
        .def("value", &Landscape::value, py::arg("locus"), py::arg("row"))
        .def("evaluate",
             [](const Landscape& l, const py::object& g, const py::object& e) {
                 return l.evaluate(to_policy<SearchPolicy>(g), to_policy<ShapePolicy>(e));
             },
             py::arg("g"), py::arg("e"), "Fitness of search policy g under shape policy e (str or 0/1 sequence).")
        .def("optimum",
             [](const Landscape& l, const py::object& e) {
                 const auto best = brute_force_optimum(l, to_policy<ShapePolicy>(e));
                 return py::make_tuple(best.policy.to_string(), best.fitness);
             },
             py::arg("e"))
        .def("local_optima", [](const Landscape& l, const py::object& e) {
            return count_local_optima(l, to_policy<ShapePolicy>(e));
        }, py::arg("e"));

    m.def("pack_index",
          [](int self_bit, std::vector<std::uint8_t> neighbors, std::vector<std::uint8_t> shape) {
              return pack_index(static_cast<std::uint8_t>(self_bit), neighbors, shape);
          },
          py::arg("self_bit"), py::arg("neighbors"), py::arg("shape") = std::vector<std::uint8_t>{});

    m.def("compositions",
          [](std::size_t omega_max) {
              std::vector<std::pair<std::size_t, std::size_t>> out;
              for (const auto& c : enumerate_compositions(omega_max)) out.emplace_back(c.size, c.shapers);
              return out;
          },
          py::arg("omega_max") = 4);

    m.def("run_preset",
          [](const std::string& name, std::vector<std::string> overrides, std::size_t jobs) {
              return run_spec(preset(name, overrides), jobs);
          },
          py::arg("name"), py::arg("overrides") = std::vector<std::string>{}, py::arg("jobs") = 1,
          "Run one of the fig1..fig5 presets with optional key=value overrides.");

    m.def("run_config",
          [](const std::string& text, std::vector<std::string> overrides, std::size_t jobs) {
              return run_spec(parse_config_text(text, overrides), jobs);
          },
          py::arg("text"), py::arg("overrides") = std::vector<std::string>{}, py::arg("jobs") = 1,
          "Run the cells described by config text.");

    m.def("verify",
          [](std::uint64_t seed) {
              VerifyOptions opts;
              opts.seed = seed;
              py::list out;
              for (const auto& r : run_verify_suite(opts)) out.append(py::make_tuple(r.name, r.passed, r.detail));
              return out;
          },
          py::arg("seed") = 1);

    m.def("t_quantile", &stats::t_quantile, py::arg("p"), py::arg("dof"));
}
