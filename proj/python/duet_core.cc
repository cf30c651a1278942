// Copyright 2026 The Duet Enclave Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings: the language front end, mechanism calibration and an
// in-process enclave for experiments.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "duet/checker/checker.h"
#include "duet/common/error.h"
#include "duet/crypto/envelope.h"
#include "duet/enclave/attestation.h"
#include "duet/enclave/config.h"
#include "duet/enclave/enclave.h"
#include "duet/lang/parser.h"
#include "duet/lang/printer.h"
#include "duet/mech/mechanisms.h"

namespace py = pybind11;

namespace duet {
namespace {

struct StatusError {
  std::string kind;
  std::string message;
};

template <typename T>
T Check(absl::StatusOr<T> s) {
  if (!s.ok()) {
    throw StatusError{std::string(WireName(GetErrorKind(s.status()))),
                      std::string(s.status().message())};
  }
  return *std::move(s);
}

Decimal Dec(const std::string& text) { return Check(Decimal::Parse(text)); }

py::tuple CostTuple(const PrivCost& c) {
  auto text = [](const ExtReal& x) {
    return x.IsFinite() ? x.value().ToString() : std::string("inf");
  };
  return py::make_tuple(text(c.epsilon), text(c.delta));
}

std::string ParseAndRender(const std::string& source) {
  return Render(*Check(Parse(source)));
}

std::string ParseTypeAndRender(const std::string& source) {
  return RenderType(Check(ParseType(source)));
}

py::dict TypecheckPy(const std::string& source,
                     const std::map<std::string, std::string>& env) {
  TyEnv tenv;
  for (const auto& [name, type] : env) tenv.emplace(name, Check(ParseType(type)));
  Typing t = Check(Typecheck(*Check(Parse(source)), tenv));
  py::dict privacy;
  for (const auto& [var, cost] : t.privacy) privacy[py::str(var)] = CostTuple(cost);
  py::dict out;
  out["type"] = RenderType(t.type);
  out["privacy"] = privacy;
  return out;
}

py::dict ValidateQueryPy(const std::string& source, const std::string& schema) {
  QueryCert cert =
      Check(ValidateQuery(*Check(Parse(source)), Check(ParseType(schema))));
  py::dict out;
  out["arg_type"] = RenderType(cert.arg_type);
  out["ret_type"] = RenderType(cert.ret_type);
  out["cost"] = CostTuple(cert.cost);
  return out;
}

std::vector<double> Samples(double (*sampler)(Rng&, double), double param,
                            int n, uint64_t seed) {
  if (n < 0) throw StatusError{"BadRequest", "n must be non-negative"};
  Rng rng(seed);
  std::vector<double> out(n);
  for (double& x : out) x = sampler(rng, param);
  return out;
}

// An enclave plus the hardware root that vouches for it.
class PyEnclave {
 public:
  PyEnclave(const std::string& epsilon, const std::string& delta,
            const std::string& schema, const std::string& build_id,
            std::optional<uint64_t> seed)
      : root_(std::make_shared<HardwareRoot>(HardwareRoot::Generate())) {
    EnclaveConfig config;
    config.epsilon = Dec(epsilon);
    config.delta = Dec(delta);
    config.schema_text = schema;
    config.build_id = build_id;
    enclave_ = Check(Enclave::Create(config, root_, Enclave::Options{seed}));
    key_.emplace(Check(EnclavePublicKey::FromPem(enclave_->public_key_pem())));
  }

  std::string measurement() const {
    return crypto::HexEncode(enclave_->measurement());
  }
  std::string public_key_pem() const { return enclave_->public_key_pem(); }
  std::string root_public_key_pem() const { return root_->PublicKeyPem(); }

  py::dict quote(const py::bytes& nonce) const {
    Quote q = Check(enclave_->GetQuote(std::string(nonce)));
    return py::module_::import("json").attr("loads")(QuoteToJson(q).dump());
  }

  bool verify_quote(const py::dict& quote, const py::bytes& nonce) const {
    std::string text = py::str(py::module_::import("json").attr("dumps")(quote));
    Quote q = Check(QuoteFromJson(nlohmann::json::parse(text)));
    return VerifyQuote(q, root_->PublicKey(), enclave_->measurement(),
                       std::string(nonce))
        .ok();
  }

  // Seals `row` to the enclave key and ingests it, as a data owner would.
  size_t insert(const std::string& row) {
    return Check(enclave_->Ingest(Check(SealEnvelope(row, *key_))));
  }

  py::dict query(const std::string& program) {
    QueryResult r = Check(enclave_->RunQuery(program));
    py::dict out;
    out["value"] = r.value;
    out["cost"] = CostTuple(r.cost);
    out["remaining"] = py::make_tuple(r.remaining.epsilon.ToString(),
                                      r.remaining.delta.ToString());
    out["serial"] = r.remaining.serial;
    out["remaining_verified"] = r.remaining.Verify(key_->signing);
    return out;
  }

  py::tuple remaining() const { return CostTuple(enclave_->remaining()); }
  size_t row_count() const { return enclave_->row_count(); }

 private:
  std::shared_ptr<HardwareRoot> root_;
  std::unique_ptr<Enclave> enclave_;
  std::optional<EnclavePublicKey> key_;  // set once the enclave exists
};

}  // namespace
}  // namespace duet

PYBIND11_MODULE(_core, m) {
  using namespace duet;  // NOLINT
  m.doc() = "Typechecked differentially private queries in an enclave.";

  static py::exception<StatusError> error(m, "DuetError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const StatusError& e) {
      PyErr_SetObject(error.ptr(),
                      py::make_tuple(e.kind, e.message).release().ptr());
    }
  });

  m.def("parse", &ParseAndRender, py::arg("source"),
        "Parses a program and returns its canonical rendering.");
  m.def("parse_type", &ParseTypeAndRender, py::arg("source"));
  m.def("typecheck", &TypecheckPy, py::arg("source"),
        py::arg("env") = std::map<std::string, std::string>{},
        "Returns {'type': str, 'privacy': {var: (eps, delta)}}.");
  m.def("validate_query", &ValidateQueryPy, py::arg("source"),
        py::arg("schema"));
  m.def(
      "laplace_scale",
      [](const std::string& s, const std::string& eps) {
        return Check(LaplaceScale(Dec(s), Dec(eps)));
      },
      py::arg("sensitivity"), py::arg("epsilon"));
  m.def(
      "gauss_sigma",
      [](const std::string& s, const std::string& eps, const std::string& d) {
        return Check(GaussSigma(Dec(s), Dec(eps), Dec(d)));
      },
      py::arg("sensitivity"), py::arg("epsilon"), py::arg("delta"));
  m.def(
      "sample_laplace",
      [](double scale, int n, uint64_t seed) {
        return Samples(&SampleLaplace, scale, n, seed);
      },
      py::arg("scale"), py::arg("n"), py::arg("seed"));
  m.def(
      "sample_gauss",
      [](double sigma, int n, uint64_t seed) {
        return Samples(&SampleGauss, sigma, n, seed);
      },
      py::arg("sigma"), py::arg("n"), py::arg("seed"));

  py::class_<PyEnclave>(m, "Enclave")
      .def(py::init<const std::string&, const std::string&, const std::string&,
                    const std::string&, std::optional<uint64_t>>(),
           py::arg("epsilon"), py::arg("delta"), py::arg("schema"),
           py::arg("build_id") = "duet-enclave", py::arg("seed") = py::none())
      .def_property_readonly("measurement", &PyEnclave::measurement)
      .def_property_readonly("public_key_pem", &PyEnclave::public_key_pem)
      .def_property_readonly("root_public_key_pem",
                             &PyEnclave::root_public_key_pem)
      .def("quote", &PyEnclave::quote, py::arg("nonce"))
      .def("verify_quote", &PyEnclave::verify_quote, py::arg("quote"),
           py::arg("nonce"))
      .def("insert", &PyEnclave::insert, py::arg("row"))
      .def("query", &PyEnclave::query, py::arg("program"))
      .def("remaining", &PyEnclave::remaining)
      .def_property_readonly("row_count", &PyEnclave::row_count);
}
