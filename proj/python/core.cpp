// Copyright (c) Saturator contributors.
// SPDX-License-Identifier: Apache-2.0
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "saturator/cli.hpp"
#include "saturator/errors.hpp"
#include "saturator/formula.hpp"
#include "saturator/presburger.hpp"
#include "saturator/tree_check.hpp"

namespace py = pybind11;

namespace {

saturator::Signature signature(const std::string& name) {
  const auto sig = saturator::parse_signature(name);
  if (!sig) throw py::value_error("unknown signature '" + name + "'");
  return *sig;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the saturator decision procedures.";

  py::register_exception<saturator::Error>(m, "Error", PyExc_ValueError);

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = saturator::run_cli(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one CLI command line; returns (exit_code, stdout, stderr).");

  m.def(
      "qe",
      [](const std::string& text) {
        const auto f = saturator::parse_formula(text, saturator::Signature::Presburger);
        return saturator::to_string(saturator::cooper_qe(f).to_formula());
      },
      py::arg("formula"), "Quantifier-free equivalent of a Presburger formula.");

  m.def(
      "decide",
      [](const std::string& text) {
        return saturator::decide_standard(saturator::parse_formula(text, saturator::Signature::Presburger));
      },
      py::arg("sentence"), "Truth of a Presburger sentence in the integers.");

  m.def(
      "tree_check",
      [](const std::string& sig, std::size_t depth) {
        const auto r = saturator::perfect_tree_check(signature(sig), depth);
        py::dict d;
        d["passed"] = r.passed;
        d["nodes"] = r.nodes;
        d["checks"] = r.checks;
        d["depth"] = r.depth;
        return d;
      },
      py::arg("sig"), py::arg("depth"));
}
