#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "exactprob/dsl.hpp"
#include "exactprob/qkd.hpp"

namespace py = pybind11;

using namespace exactprob;
namespace q = exactprob::qkd;

namespace {

py::dict outcome_dict(const dsl::QueryOutcome& outcome) {
  py::dict d;
  d["query"] = outcome.query.text();
  if (outcome.value) {
    d["exact"] = outcome.value->str();
    d["decimal"] = outcome.value->to_double();
  }
  if (!outcome.blocks.empty()) {
    py::list blocks;
    for (const auto& b : outcome.blocks) {
      py::dict block;
      block["label"] = b.label;
      block["prob"] = b.block_prob.str();
      block["joint"] = b.joint_prob.str();
      if (b.conditional)
        block["conditional"] = b.conditional->str();
      else
        block["conditional"] = py::none();
      blocks.append(block);
    }
    d["blocks"] = blocks;
  }
  if (outcome.partition_report) {
    d["valid"] = outcome.partition_report->valid;
    d["message"] = outcome.partition_report->message;
  }
  return d;
}

std::string render_model_error(const dsl::ModelError& e) {
  std::string msg;
  for (const auto& d : e.diagnostics()) {
    if (!msg.empty()) msg += '\n';
    msg += d.render();
  }
  return msg.empty() ? std::string("model error") : msg;
}

}  // namespace

PYBIND11_MODULE(_exactprob, m) {
  m.doc() = "exact finite-probability models and the BB84 first phase";

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dsl::ModelError& e) {
      PyErr_SetString(PyExc_ValueError, render_model_error(e).c_str());
    } catch (const Error& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<dsl::ModelFile>(m, "Model")
      .def_property_readonly("vars",
                             [](const dsl::ModelFile& model) { return model.vars; })
      .def_property_readonly("stored_queries",
                             [](const dsl::ModelFile& model) {
                               std::vector<std::string> texts;
                               for (const auto& query : model.queries)
                                 texts.push_back(query.text());
                               return texts;
                             })
      .def("emit", [](const dsl::ModelFile& model) { return dsl::emit_model(model); })
      .def("prior_weights",
           [](const dsl::ModelFile& model) {
             PriorAssignment prior = model.prior();
             py::dict d;
             for (std::size_t i = 0; i < prior.space().size(); ++i)
               d[py::str(prior.space().label(i))] = prior.weight(i).str();
             return d;
           })
      .def("query",
           [](const dsl::ModelFile& model, const std::string& text) {
             return outcome_dict(dsl::eval_query(model, dsl::parse_query(text)));
           })
      .def("run_stored_queries", [](const dsl::ModelFile& model) {
        py::list results;
        for (const auto& query : model.queries)
          results.append(outcome_dict(dsl::eval_query(model, query)));
        return results;
      });

  m.def("parse_model", [](const std::string& text) { return dsl::parse_model(text); },
        py::arg("text"));
  m.def("measurement_prob_one",
        [](bool encode_basis_x, bool encoded_bit, bool measure_basis_x) {
          return q::measurement_prob_one(encode_basis_x, encoded_bit, measure_basis_x).str();
        },
        py::arg("encode_basis_x"), py::arg("encoded_bit"), py::arg("measure_basis_x"));

  m.def("qkd_model_text", [] { return dsl::emit_model(q::qkd_model()); });
  m.def("eve_model_text", [] { return dsl::emit_model(q::eve_model()); });
  m.def("qkd_tree_render", [] { return q::qkd_tree().render(); });

  m.def("qkd_table", [] {
    OutcomeSpace space = q::qkd_space();
    PriorAssignment ops = q::qkd_ops();
    py::list rows;
    for (std::size_t i = 0; i < space.size(); ++i) {
      py::dict row;
      for (std::size_t k = 0; k < space.variables().size(); ++k)
        row[py::str(space.variables()[k])] = space.component(i, k);
      row["exact"] = ops.weight(i).str();
      row["decimal"] = ops.weight(i).to_double();
      rows.append(row);
    }
    return rows;
  });

  m.def("qkd_security", [] {
    TotalProbabilityResult total = q::p_b_measures_one();
    q::PosteriorReport report = q::p_a_sent_one_given_b_measured_one();
    py::dict d;
    py::list blocks;
    dsl::ModelFile model = q::qkd_model();
    for (std::size_t j = 0; j < total.terms.size(); ++j) {
      py::dict block;
      block["label"] = model.events.at(j).name;
      block["prob"] = total.terms[j].block_prob.str();
      block["joint"] = total.terms[j].joint_prob.str();
      blocks.append(block);
    }
    d["blocks"] = blocks;
    d["p_b_measures_one"] = total.total.str();
    d["joint"] = report.joint.str();
    d["posterior"] = report.posterior.str();
    d["error"] = report.error_prob.str();
    return d;
  });

  m.def("qkd_eve_stats", [] {
    q::InterceptResendStats stats = q::intercept_resend_stats();
    py::dict d;
    d["sifted_prob"] = stats.sifted_prob.str();
    d["sifted_qber"] = stats.sifted_qber.str();
    d["eve_correct_given_sift"] = stats.eve_correct_given_sift.str();
    return d;
  });
}
