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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Tolerances are fixed constants below.
//
//   acceptance_test --server-binary path/to/duet-server

#include <fcntl.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_replace.h"
#include "duet/checker/checker.h"
#include "duet/client/client.h"
#include "duet/enclave/attestation.h"
#include "duet/enclave/enclave.h"
#include "duet/enclave/enclave_service.h"
#include "duet/gateway/channel.h"
#include "duet/interp/interpreter.h"
#include "duet/lang/parser.h"
#include "duet/lang/printer.h"
#include "duet/mech/mechanisms.h"
#include "query_gen.h"
#include "test_util.h"

extern char** environ;

namespace duet {
namespace {

using Clock = std::chrono::steady_clock;

// Pinned tolerances.
constexpr double kGaussStdTolerance = 0.02;
constexpr double kLaplaceVarTolerance = 0.05;
constexpr double kDpSlack = 1.2;
constexpr double kE2eTolerance = 15.1;  // 4 sigma at (1.0, 1.0, 0.001)

struct Verdict {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string g_server_binary;

Decimal D(const char* text) { return *Decimal::Parse(text); }

// --- 1. Golden typing ---------------------------------------------------------

Verdict GoldenTyping() {
  Verdict v;
  auto type_of = [](const char* src, const TyEnv& env) -> std::string {
    absl::StatusOr<ExprPtr> e = Parse(src);
    if (!e.ok()) return e.status().ToString();
    absl::StatusOr<Typing> t = Typecheck(**e, env);
    if (!t.ok()) return t.status().ToString();
    std::string out = RenderType(t->type);
    for (const auto& [var, cost] : t->privacy) {
      absl::StrAppend(&out, " {", var, ": ", cost.epsilon.ToString(), ", ",
                      cost.delta.ToString(), "}");
    }
    return out;
  };
  std::string gauss = type_of(kStandaloneGauss, {{"x", Ty::Real()}});
  v.Require(gauss == "R {x: 1.5, 0.000001}", "standalone gauss: " + gauss);
  std::string fn = type_of(kPrivacyFunction, {});
  v.Require(fn == "R@<1.0, 0.001> => R", "privacy function: " + fn);
  std::string query = type_of(kCountingQuery, {});
  v.Require(query == "M [L1,U | star, dR::dR::[]]@<1.0, 0.001> => R",
            "counting query: " + query);
  if (v.pass) v.detail = query;
  return v;
}

// --- 2. Composition -----------------------------------------------------------

Verdict Composition() {
  Verdict v;
  auto e = TestEnclave(TestConfig("2.0", "0.002"));
  EnclavePublicKey key = *EnclavePublicKey::FromPem(e->public_key_pem());
  for (int i = 0; i < 100; ++i) (void)e->Ingest(*SealEnvelope("1,2", key));
  std::vector<std::string> seq;
  for (int i = 0; i < 2; ++i) {
    absl::StatusOr<QueryResult> r = e->RunQuery(kCountingQuery);
    if (!r.ok()) {
      v.Require(false, absl::StrCat("query ", i + 1, ": ", r.status().ToString()));
      return v;
    }
    seq.push_back(absl::StrCat("(", r->remaining.epsilon.ToString(), ",",
                               r->remaining.delta.ToString(), ")"));
    v.Require(r->remaining.Verify(key.signing), "remaining not signed");
  }
  v.Require(seq[0] == "(1.0,0.001)", "first remaining " + seq[0]);
  v.Require(e->remaining().epsilon.IsZero() && e->remaining().delta.IsZero(),
            "second remaining " + seq[1]);
  absl::StatusOr<QueryResult> third = e->RunQuery(kCountingQuery);
  v.Require(GetErrorKind(third.status()) == ErrorKind::kBudgetExhausted,
            "third: " + third.status().ToString());
  v.Require(e->signed_budget().serial == 2, "serial moved after refusal");
  if (v.pass) v.detail = absl::StrCat(seq[0], " -> ", seq[1], " -> BudgetExhausted");
  return v;
}

// --- 3. Calibration -----------------------------------------------------------

Verdict Calibration() {
  Verdict v;
  constexpr int kN = 100000;
  double sigma = *GaussSigma(D("1.0"), D("1.0"), D("0.001"));
  double closed = std::sqrt(2 * std::log(1250.0));
  v.Require(std::abs(sigma - closed) < 1e-12, "sigma formula");
  Rng rng(20261017);
  double sum = 0, sq = 0;
  for (int i = 0; i < kN; ++i) {
    double x = SampleGauss(rng, sigma);
    sum += x;
    sq += x * x;
  }
  double mean = sum / kN;
  double sd = std::sqrt((sq - kN * mean * mean) / (kN - 1));
  double gauss_err = std::abs(sd / closed - 1);
  v.Require(gauss_err <= kGaussStdTolerance,
            absl::StrFormat("gauss std %.4f vs %.4f", sd, closed));
  sum = sq = 0;
  for (int i = 0; i < kN; ++i) {
    double x = SampleLaplace(rng, *LaplaceScale(D("1"), D("1")));
    sum += x;
    sq += x * x;
  }
  mean = sum / kN;
  double var = (sq - kN * mean * mean) / (kN - 1);
  double lap_err = std::abs(var / 2 - 1);
  v.Require(lap_err <= kLaplaceVarTolerance,
            absl::StrFormat("laplace var %.4f vs 2", var));
  v.detail = absl::StrFormat(
      "gauss std %.4f (sigma %.4f, err %.2f%% <= 2%%), laplace var %.4f "
      "(err %.2f%% <= 5%%)%s",
      sd, closed, 100 * gauss_err, var, 100 * lap_err,
      v.pass ? "" : "; " + v.detail);
  return v;
}

// --- 4. Empirical DP ----------------------------------------------------------

Verdict EmpiricalDp() {
  Verdict v;
  constexpr int kRuns = 100000;
  absl::StatusOr<ExprPtr> program = Parse(kCountingQuery);
  Ty schema = *ParseType(kPairsSchema);
  absl::StatusOr<QueryCert> cert = ValidateQuery(**program, schema);
  if (!cert.ok()) {
    v.Require(false, cert.status().ToString());
    return v;
  }
  double eps = cert->cost.epsilon.value().ToDouble();
  double delta = cert->cost.delta.value().ToDouble();
  double sigma = *GaussSigma(D("1.0"), D("1.0"), D("0.001"));

  auto db_of = [&](int n) {
    auto db = std::make_shared<Database>(schema);
    for (int i = 0; i < n; ++i) (void)db->Append(*ParseRow("44.47,-73.21"));
    return std::shared_ptr<const Database>(db);
  };
  RngNoiseSource unused{Rng(0)};
  absl::StatusOr<Value> fn = Evaluate(**program, {}, unused);
  if (!fn.ok()) {
    v.Require(false, fn.status().ToString());
    return v;
  }
  const double center = 100.5, width = sigma / 4;
  const int inner = static_cast<int>(std::round(12 * sigma / width));
  // Bin 0 and the last bin collect the tails beyond +-6 sigma.
  auto histogram = [&](int n, uint64_t seed) {
    std::vector<double> p(inner + 2, 0);
    RngNoiseSource noise{Rng(seed)};
    auto db = db_of(n);
    for (int i = 0; i < kRuns; ++i) {
      double out = *ApplyQuery(*fn, db, noise);
      double pos = (out - (center - 6 * sigma)) / width;
      int bin = pos < 0 ? 0 : pos >= inner ? inner + 1 : 1 + static_cast<int>(pos);
      p[bin] += 1.0 / kRuns;
    }
    return p;
  };
  std::vector<double> px = histogram(100, 1), py = histogram(101, 2);
  double worst = 0;
  int violations = 0;
  for (size_t b = 0; b < px.size(); ++b) {
    for (auto [a, c] : {std::pair{px[b], py[b]}, std::pair{py[b], px[b]}}) {
      double bound = kDpSlack * (std::exp(eps) * c + delta);
      worst = std::max(worst, a / bound);
      if (a > bound) ++violations;
    }
  }
  v.Require(violations == 0, absl::StrCat(violations, " bins violate the bound"));
  v.detail = absl::StrFormat(
      "%d bins of width sigma/4, eps=%g delta=%g, worst Pr(x)/(1.2(e^eps "
      "Pr(y)+delta)) = %.3f%s",
      static_cast<int>(px.size()), eps, delta, worst,
      v.pass ? "" : "; " + v.detail);
  return v;
}

// --- 5. Rejection suite and taint property --------------------------------------

Verdict Rejection() {
  Verdict v;
  auto e = TestEnclave();
  SignedBudget before = e->signed_budget();
  auto expect = [&](const std::string& program, ErrorKind kind,
                    const char* wire) {
    absl::StatusOr<QueryResult> r = e->RunQuery(program);
    v.Require(!r.ok() && GetErrorKind(r.status()) == kind &&
                  WireName(kind) == std::string(wire),
              absl::StrCat("expected ", wire, ", got ",
                           r.ok() ? "success" : r.status().ToString()));
  };
  expect(absl::StrCat("plam . df : ", kPairsSchema, " => real (rows df)"),
         ErrorKind::kInfiniteCost, "InfiniteCost");
  expect(absl::StrReplaceAll(kCountingQuery, {{"dR :: dR :: []", "dR :: []"}}),
         ErrorKind::kSchemaMismatch, "SchemaMismatch");
  expect(absl::StrReplaceAll(kCountingQuery,
                             {{"gauss[R+[1.0]", "gauss[R+[0.5]"}}),
         ErrorKind::kSensitivityExceeded, "TypeError");
  v.Require(e->signed_budget().serial == before.serial &&
                e->remaining() == PrivCost{ExtReal(before.epsilon),
                                           ExtReal(before.delta)},
            "budget moved");

  QueryGenerator gen(20261017);
  int accepted = 0, leaky = 0, leaky_accepted = 0;
  for (int i = 0; i < 5000; ++i) {
    ExprPtr q = gen.Next();
    bool reads_raw = UnprotectedReads(*q, {}).count("df") > 0;
    bool ok = ValidateQuery(*q, *ParseType(kPairsSchema)).ok();
    leaky += reads_raw;
    accepted += ok;
    if (ok && reads_raw) {
      ++leaky_accepted;
      if (leaky_accepted == 1) v.Require(false, "accepted: " + Render(*q));
    }
  }
  v.Require(accepted > 0 && leaky > 0, "generator lacks coverage");
  v.detail = absl::StrCat(
      "3 rejections with budget untouched; 5000 random programs: ", accepted,
      " accepted, ", leaky, " read df outside a mechanism, ", leaky_accepted,
      " of those accepted", v.pass ? "" : "; " + v.detail);
  return v;
}

// --- Deployment: in-test enclave host plus a duet-server gateway child --------

class Deployment {
 public:
  static std::unique_ptr<Deployment> Start(const EnclaveConfig& config,
                                           std::string* error) {
    auto d = std::unique_ptr<Deployment>(new Deployment);
    d->dir_ = std::filesystem::temp_directory_path() /
              absl::StrCat("duet_accept_", ::getpid(), "_", counter_++);
    std::filesystem::create_directories(d->dir_);
    std::string socket = (d->dir_ / "enclave.sock").string();
    std::string port_file = (d->dir_ / "port").string();
    auto enclave = *Enclave::Create(config, TestRoot(),
                                    Enclave::Options{.noise_seed = 7});
    d->enclave_ = enclave.get();
    d->service_ = std::make_shared<EnclaveService>(std::move(enclave));
    absl::StatusOr<std::unique_ptr<EnclaveSocketServer>> server =
        EnclaveSocketServer::Listen(socket, d->service_);
    if (!server.ok()) {
      *error = server.status().ToString();
      return nullptr;
    }
    d->server_ = *std::move(server);
    d->serving_ = std::thread([s = d->server_.get()] { s->Serve(); });

    std::vector<std::string> args = {g_server_binary, "gateway", "--socket",
                                     socket,          "--host",  "127.0.0.1",
                                     "--port",        "0",       "--port-file",
                                     port_file};
    std::vector<char*> argv;
    for (std::string& a : args) argv.push_back(a.data());
    argv.push_back(nullptr);
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, "/dev/null",
                                     O_WRONLY, 0);
    int rc = posix_spawn(&d->child_, g_server_binary.c_str(), &actions,
                         nullptr, argv.data(), environ);
    posix_spawn_file_actions_destroy(&actions);
    if (rc != 0) {
      *error = absl::StrCat("cannot spawn ", g_server_binary);
      d->child_ = -1;
      return nullptr;
    }
    for (int i = 0; i < 200 && d->port_ == 0; ++i) {
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
      std::ifstream in(port_file);
      in >> d->port_;
    }
    if (d->port_ == 0) {
      *error = "gateway child never reported a port";
      return nullptr;
    }
    return d;
  }

  ~Deployment() {
    if (child_ > 0) {
      kill(child_, SIGTERM);
      waitpid(child_, nullptr, 0);
    }
    if (server_) server_->Stop();
    if (serving_.joinable()) serving_.join();
    std::filesystem::remove_all(dir_);
  }

  std::string url() const { return absl::StrCat("http://127.0.0.1:", port_); }
  pid_t gateway_pid() const { return child_; }
  const Enclave& enclave() const { return *enclave_; }

 private:
  Deployment() = default;

  static inline int counter_ = 0;
  std::filesystem::path dir_;
  const Enclave* enclave_ = nullptr;
  std::shared_ptr<EnclaveService> service_;
  std::unique_ptr<EnclaveSocketServer> server_;
  std::thread serving_;
  pid_t child_ = -1;
  int port_ = 0;
};

OwnerPolicy PolicyFor(const EnclaveConfig& config) {
  return OwnerPolicy{D("2.0"), D("0.01"), *ComputeMeasurement(config),
                     TestRoot()->PublicKey()};
}

// Every readable mapping of another process.
absl::StatusOr<std::string> ReadProcessMemory(pid_t pid) {
  std::ifstream maps(absl::StrCat("/proc/", pid, "/maps"));
  int mem = open(absl::StrCat("/proc/", pid, "/mem").c_str(), O_RDONLY);
  if (!maps || mem < 0) {
    if (mem >= 0) close(mem);
    return absl::PermissionDeniedError("cannot open process memory");
  }
  std::string image, line;
  size_t regions = 0;
  while (std::getline(maps, line)) {
    unsigned long lo, hi;
    char perms[5] = {};
    if (std::sscanf(line.c_str(), "%lx-%lx %4s", &lo, &hi, perms) != 3) continue;
    if (perms[0] != 'r' || line.find("[vvar") != std::string::npos) continue;
    std::string buf(hi - lo, '\0');
    ssize_t got = pread(mem, buf.data(), buf.size(), static_cast<off_t>(lo));
    if (got <= 0) continue;
    buf.resize(got);
    image += buf;
    image.push_back('\0');
    ++regions;
  }
  close(mem);
  if (regions == 0) return absl::PermissionDeniedError("no readable regions");
  return image;
}

// Distinctive plaintext values: nine digits, a point, four digits.
std::string DistinctiveValue(std::mt19937_64& gen) {
  return absl::StrFormat("%09d.%04d", 100000000 + gen() % 900000000,
                         gen() % 10000);
}

// Finds any window of `image` shaped like DistinctiveValue that is in `set`.
int CountPlaintextHits(const std::string& image,
                       const std::unordered_set<std::string>& set) {
  int hits = 0;
  const size_t n = 14;
  for (size_t i = 0; i + n <= image.size(); ++i) {
    if (image[i + 9] != '.') continue;
    if (set.count(image.substr(i, n))) ++hits;
  }
  return hits;
}

// --- 6. Attestation tamper, stale keys, gateway memory -------------------------

Verdict Tamper() {
  Verdict v;
  auto e = TestEnclave();
  std::string nonce = crypto::RandomBytes(kQuoteNonceSize);
  Quote q = *e->GetQuote(nonce);
  crypto::VerifyingKey root = TestRoot()->PublicKey();
  v.Require(VerifyQuote(q, root, e->measurement(), nonce).ok(),
            "honest quote rejected");
  int flips = 0, rejected = 0;
  for (std::string Quote::*field : {&Quote::measurement, &Quote::enclave_pubkey,
                                    &Quote::nonce, &Quote::sig}) {
    for (size_t i = 0; i < (q.*field).size(); ++i) {
      for (int bit = 0; bit < 8; ++bit) {
        Quote t = q;
        (t.*field)[i] ^= static_cast<char>(1 << bit);
        ++flips;
        rejected += !VerifyQuote(t, root, e->measurement(), nonce).ok();
      }
    }
  }
  v.Require(rejected == flips, absl::StrCat(flips - rejected, " flips accepted"));

  // Stale keys: envelopes sealed before a restart.
  std::vector<Envelope> sealed;
  EnclavePublicKey old_key = *EnclavePublicKey::FromPem(e->public_key_pem());
  for (int i = 0; i < 200; ++i) {
    sealed.push_back(*SealEnvelope(absl::StrCat(i, ",", i), old_key));
  }
  e.reset();
  auto restarted = TestEnclave();
  int stale_ok = 0;
  for (const Envelope& env : sealed) {
    stale_ok += GetErrorKind(restarted->Ingest(env).status()) ==
                ErrorKind::kDecryptError;
  }
  v.Require(stale_ok == 200, absl::StrCat(200 - stale_ok, " stale envelopes not DecryptError"));

  // Gateway memory after real traffic.
  EnclaveConfig config = TestConfig();
  std::string error;
  auto deployment = Deployment::Start(config, &error);
  if (deployment == nullptr) {
    v.Require(false, error);
    return v;
  }
  auto transport = MakeHttpTransport(deployment->url());
  absl::StatusOr<VerifiedServer> server =
      Negotiate(*transport, PolicyFor(config));
  if (!server.ok()) {
    v.Require(false, server.status().ToString());
    return v;
  }
  std::mt19937_64 gen(31337);
  std::unordered_set<std::string> plaintexts;
  std::vector<std::string> ciphertexts;
  for (int i = 0; i < 300; ++i) {
    std::string a = DistinctiveValue(gen), b = DistinctiveValue(gen);
    plaintexts.insert(a);
    plaintexts.insert(b);
    Row row = {*Decimal::Parse(a), *Decimal::Parse(b)};
    Envelope env = *EncryptRow(row, server->enclave_key);
    ciphertexts.push_back(env.ciphertext);
    nlohmann::json body = {{"envelope", EnvelopeToJson(env)}};
    absl::StatusOr<HttpReply> reply = transport->Post("/insert", body.dump());
    v.Require(reply.ok() && reply->status == 200, "insert failed");
    if (!v.pass) return v;
  }
  v.Require(SubmitQuery(*transport, *server, kCountingQuery).ok(), "query failed");
  (void)transport->Get("/pubkeypem", {});
  (void)transport->Get("/epsilon", {});

  absl::StatusOr<std::string> image = ReadProcessMemory(deployment->gateway_pid());
  if (!image.ok()) {
    v.Require(false, image.status().ToString());
    return v;
  }
  // Positive control: the scanner must see what the gateway legitimately
  // holds, namely the stored ciphertexts.
  int ciphertexts_seen = 0;
  for (const std::string& c : ciphertexts) {
    ciphertexts_seen += image->find(c) != std::string::npos;
  }
  v.Require(ciphertexts_seen == static_cast<int>(ciphertexts.size()),
            absl::StrCat("scanner control: only ", ciphertexts_seen,
                         " stored ciphertexts visible"));
  int plain_hits = CountPlaintextHits(*image, plaintexts);
  v.Require(plain_hits == 0, absl::StrCat(plain_hits, " plaintext values in gateway memory"));
  int key_hits = 0;
  for (const std::string& secret :
       {EnclaveTestPeer::RawSigningKey(deployment->enclave()),
        EnclaveTestPeer::RawKemKey(deployment->enclave())}) {
    for (const std::string& form : {secret, crypto::HexEncode(secret),
                                    crypto::Base64Encode(secret)}) {
      key_hits += image->find(form) != std::string::npos;
    }
  }
  v.Require(key_hits == 0, absl::StrCat(key_hits, " private key encodings in gateway memory"));
  v.detail = absl::StrFormat(
      "%d/%d bit flips rejected, %d/200 stale envelopes DecryptError, gateway "
      "pid %d: %.1f MiB scanned, %d/%d ciphertexts found (control), %d of %d "
      "plaintext values, %d private key encodings%s",
      rejected, flips, stale_ok, deployment->gateway_pid(),
      image->size() / 1048576.0, ciphertexts_seen,
      static_cast<int>(ciphertexts.size()), plain_hits,
      static_cast<int>(plaintexts.size()), key_hits,
      v.pass ? "" : "; " + v.detail);
  return v;
}

// --- 7. End to end ----------------------------------------------------------------

Verdict EndToEnd() {
  Verdict v;
  EnclaveConfig config = TestConfig();
  std::string error;
  auto deployment = Deployment::Start(config, &error);
  if (deployment == nullptr) {
    v.Require(false, error);
    return v;
  }
  auto transport = MakeHttpTransport(deployment->url());
  absl::StatusOr<VerifiedServer> server =
      Negotiate(*transport, PolicyFor(config));
  if (!server.ok()) {
    v.Require(false, server.status().ToString());
    return v;
  }
  std::mt19937_64 gen(5);
  size_t count = 0;
  for (int i = 0; i < 1000; ++i) {
    Row row = {*Decimal::Parse(absl::StrFormat("%.4f", -90 + gen() % 1800000 / 1e4)),
               *Decimal::Parse(absl::StrFormat("%.4f", -180 + gen() % 3600000 / 1e4))};
    absl::StatusOr<size_t> n = SubmitRow(*transport, *server, row);
    if (!n.ok()) {
      v.Require(false, n.status().ToString());
      return v;
    }
    count = *n;
  }
  v.Require(count == 1000, absl::StrCat("count ", count));
  absl::StatusOr<QueryOutcome> q = SubmitQuery(*transport, *server, kCountingQuery);
  if (!q.ok()) {
    v.Require(false, q.status().ToString());
    return v;
  }
  v.Require(std::abs(q->value - 1000) <= kE2eTolerance,
            absl::StrFormat("value %.4f", q->value));
  v.Require(q->remaining_verified, "remaining budget signature invalid");
  v.detail = absl::StrFormat(
      "1000 HTTP inserts via duet-server gateway, value %.4f, |value-1000| = "
      "%.4f <= 15.1, remaining (%s, %s) verified%s",
      q->value, std::abs(q->value - 1000), q->remaining.epsilon.ToString(),
      q->remaining.delta.ToString(), v.pass ? "" : "; " + v.detail);
  return v;
}

struct Criterion {
  const char* name;
  double limit_seconds;  // 0 means no time bound
  std::function<Verdict()> run;
};

int Main() {
  const std::vector<Criterion> criteria = {
      {"golden-typing", 1, GoldenTyping},
      {"composition", 1, Composition},
      {"mechanism-calibration", 10, Calibration},
      {"empirical-dp", 60, EmpiricalDp},
      {"rejection-suite", 0, Rejection},
      {"attestation-tamper", 0, Tamper},
      {"end-to-end", 30, EndToEnd},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    const Criterion& c = criteria[i];
    auto start = Clock::now();
    Verdict v = c.run();
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      v.pass = false;
      v.detail += absl::StrFormat("; took %.2f s, limit %.0f s", secs,
                                  c.limit_seconds);
    }
    failed += !v.pass;
    std::string limit = c.limit_seconds > 0
                            ? absl::StrFormat(" < %.0f s", c.limit_seconds)
                            : "";
    std::cout << absl::StrFormat("%s [%d] %-22s %.2f s%s | %s",
                                 v.pass ? "PASS" : "FAIL", i + 1, c.name, secs,
                                 limit, v.detail)
              << std::endl;
  }
  std::cout << (failed == 0 ? "ALL ACCEPTANCE CRITERIA PASS"
                            : absl::StrCat(failed, " CRITERIA FAILED"))
            << std::endl;
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace duet

int main(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--server-binary") duet::g_server_binary = argv[i + 1];
  }
  if (duet::g_server_binary.empty()) {
    std::cerr << "usage: acceptance_test --server-binary PATH" << std::endl;
    return 2;
  }
  signal(SIGPIPE, SIG_IGN);
  return duet::Main();
}
