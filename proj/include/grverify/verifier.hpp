#pragma once

// The check suite: every representation against the closed form, the
// cross-identities between the intermediate integrals, and the comparison
// with the tabulated value. Reports render as a fixed-width table or JSON.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "grverify/constants.hpp"
#include "grverify/contour.hpp"
#include "grverify/elliptic.hpp"
#include "grverify/quadrature.hpp"
#include "grverify/representations.hpp"
#include "grverify/series_forms.hpp"

namespace grverify {

inline constexpr std::string_view kToolVersion = "grverify 1.0.0";

enum class Status { pass, fail, no_converge };
/// agreement: pass when |lhs - rhs| <= tolerance. discrepancy: pass when it exceeds it.
enum class CheckKind { agreement, discrepancy };

inline std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::no_converge: return "no-converge";
  }
  return "fail";
}

inline std::string_view to_string(CheckKind k) {
  return k == CheckKind::agreement ? "agreement" : "discrepancy";
}

inline std::optional<Status> parse_status(std::string_view s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "no-converge") return Status::no_converge;
  return std::nullopt;
}

struct CheckRecord {
  std::string id;
  std::string description;
  double lhs = 0.0;
  double rhs = 0.0;
  double abs_diff = 0.0;
  double tolerance = 0.0;
  Status status = Status::fail;
  std::string anchor;
  long evals = 0;
  long wall_time_ms = 0;
  CheckKind kind = CheckKind::agreement;

  bool operator==(const CheckRecord&) const = default;
};

struct Report {
  std::vector<CheckRecord> records;
  std::string tool_version{kToolVersion};
  std::string config_echo;
  Status overall = Status::pass;  // pass or fail only

  bool operator==(const Report&) const = default;
};

struct VerifyConfig {
  QuadratureConfig quad{};
  SeriesConfig series{};
  double tol = 1e-9;         // representation and chain checks
  double series_tol = 1e-5;  // R2, R3
  double timeout_secs = 30.0;
  unsigned jobs = 0;  // 0: hardware concurrency

  void validate() const {
    quad.validate();
    series.validate();
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (!(series_tol > 0.0)) throw std::invalid_argument("series-tol must be > 0");
    if (!(timeout_secs > 0.0)) throw std::invalid_argument("timeout-secs must be > 0");
  }
};

/// Signals an id outside the catalog.
class UnknownCheck : public std::invalid_argument {
 public:
  explicit UnknownCheck(const std::string& id)
      : std::invalid_argument("unknown check id: " + id), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

/// Decide the status of a finished record from its sides and convergence.
inline void settle(CheckRecord& r, bool converged) {
  r.abs_diff = std::abs(r.lhs - r.rhs);
  if (!std::isfinite(r.abs_diff)) {
    r.status = Status::fail;
  } else if (!converged) {
    r.status = Status::no_converge;
  } else if (r.kind == CheckKind::agreement) {
    r.status = r.abs_diff <= r.tolerance ? Status::pass : Status::fail;
  } else {
    r.status = r.abs_diff > r.tolerance ? Status::pass : Status::fail;
  }
}

namespace detail {

// Each representation is evaluated at most once per run, whichever check asks first.
class RepresentationCache {
 public:
  RepresentationCache(const QuadratureConfig& quad, const SeriesConfig& series)
      : quad_(quad), series_(series) {}

  const QuadratureResult<double>& get(RepresentationId id, const QuadratureConfig& with_deadline) {
    const auto i = static_cast<std::size_t>(id);
    std::call_once(once_[i], [&] {
      QuadratureConfig cfg = quad_;
      cfg.deadline = with_deadline.deadline;
      results_[i] = eval_representation(id, cfg, series_);
    });
    return results_[i];
  }

 private:
  QuadratureConfig quad_;
  SeriesConfig series_;
  std::array<std::once_flag, kRepresentationCount> once_;
  std::array<QuadratureResult<double>, kRepresentationCount> results_{};
};

struct CheckContext {
  const VerifyConfig& cfg;
  QuadratureConfig quad;  // carries this check's deadline
  RepresentationCache& reps;
};

struct CheckSpec {
  std::string_view id;
  std::string_view description;
  std::string_view anchor;
  std::function<CheckRecord(CheckContext&)> run;
};

inline bool is_series_rep(RepresentationId id) {
  return id == RepresentationId::R2 || id == RepresentationId::R3;
}

inline CheckSpec representation_check(const RepresentationInfo& rep) {
  return {rep.name, rep.description, rep.anchor, [id = rep.id](CheckContext& ctx) {
            CheckRecord r;
            r.tolerance = is_series_rep(id) ? ctx.cfg.series_tol : ctx.cfg.tol;
            const auto& lhs = ctx.reps.get(id, ctx.quad);
            // The closed form is checked against R0, everything else against the closed form.
            const auto other = id == RepresentationId::R12 ? RepresentationId::R0
                                                           : RepresentationId::R12;
            const auto& rhs = ctx.reps.get(other, ctx.quad);
            r.lhs = lhs.value;
            r.rhs = rhs.value;
            r.evals = lhs.evals + rhs.evals;
            settle(r, lhs.converged && rhs.converged);
            return r;
          }};
}

inline constexpr std::array<RepresentationId, 11> kChainMembers{
    RepresentationId::R0, RepresentationId::R1, RepresentationId::R4,  RepresentationId::R5,
    RepresentationId::R6, RepresentationId::R7, RepresentationId::R8,  RepresentationId::R9,
    RepresentationId::R10, RepresentationId::R11, RepresentationId::R12};

// The sample point with the largest disagreement among (lhs, rhs) pairs.
struct WorstPair {
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = -1.0;
  long evals = 0;
  bool converged = true;

  void offer(double l, double r, long ev, bool conv) {
    evals += ev;
    converged = converged && conv;
    const double g = std::abs(l - r);
    if (g > gap || std::isnan(g)) {
      gap = g;
      lhs = l;
      rhs = r;
    }
  }
  void fill(CheckRecord& rec) const {
    rec.lhs = lhs;
    rec.rhs = rhs;
    rec.evals = evals;
    settle(rec, converged);
  }
};

inline std::vector<CheckSpec> build_catalog() {
  std::vector<CheckSpec> out;
  for (const auto& rep : kRepresentations) out.push_back(representation_check(rep));

  out.push_back({"chain", "spread of all quadrature and closed-form values",
                 "max - min over R0, R1, R4..R12", [](CheckContext& ctx) {
                   CheckRecord r;
                   r.tolerance = ctx.cfg.tol;
                   double hi = -kInfinity;
                   double lo = kInfinity;
                   bool ok = true;
                   for (auto id : kChainMembers) {
                     const auto& v = ctx.reps.get(id, ctx.quad);
                     hi = std::max(hi, v.value);
                     lo = std::min(lo, v.value);
                     r.evals += v.evals;
                     ok = ok && v.converged;
                   }
                   r.lhs = hi;
                   r.rhs = lo;
                   settle(r, ok);
                   return r;
                 }});

  out.push_back({"R0-vs-wrong", "defining integral against the tabulated pi/(2 sqrt6)",
                 "R0 != pi/(2 sqrt6)", [](CheckContext& ctx) {
                   CheckRecord r;
                   r.kind = CheckKind::discrepancy;
                   r.tolerance = 0.02;
                   const auto& v = ctx.reps.get(RepresentationId::R0, ctx.quad);
                   r.lhs = v.value;
                   r.rhs = constants().wrong_value;
                   r.evals = v.evals;
                   settle(r, v.converged);
                   return r;
                 }});

  for (std::size_t i = 0; i < kEllipticIdentities.size(); ++i) {
    const auto& meta = kEllipticIdentities[i];
    out.push_back({meta.id, meta.description, meta.anchor, [i](CheckContext& ctx) {
                     const auto ids = elliptic_identities(ctx.quad);
                     CheckRecord r;
                     r.tolerance = 1e-10;
                     r.lhs = ids[i].lhs.value;
                     r.rhs = ids[i].rhs;
                     r.evals = ids[i].lhs.evals;
                     settle(r, ids[i].lhs.converged);
                     return r;
                   }});
  }

  out.push_back({"landen", "descending Landen step between K(k') and K(1/sqrt3)",
                 "K(k') = (1 + 1/sqrt3) K(1/sqrt3)", [](CheckContext&) {
                   CheckRecord r;
                   r.tolerance = 1e-12;
                   const double k1 = 1.0 / std::numbers::sqrt3;
                   r.lhs = complete_K(Modulus(constants().k_prime));
                   r.rhs = (1.0 + k1) * complete_K(Modulus(k1));
                   settle(r, true);
                   return r;
                 }});

  out.push_back({"V4-u-series", "U(t) series against quadrature, worst of t in {0.1,0.5,1,2,5}",
                 "sum_k ... = int_0^1 exp(-16/3 u^2(1-u)^2 t) du", [](CheckContext& ctx) {
                   CheckRecord r;
                   r.tolerance = 1e-11;
                   WorstPair w;
                   for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
                     const auto s = u_series(t, ctx.cfg.series);
                     const auto q = u_integral(t, ctx.quad);
                     w.offer(s.value, q.value, s.terms_used + q.evals, s.converged && q.converged);
                   }
                   w.fill(r);
                   return r;
                 }});

  out.push_back({"V5-hankel", "S(t) series against the Hankel contour, worst of t in {0.5,1,2,5}",
                 "sum_n ... = (1/2 pi i) int_H e^{tz} / sqrt(z + sqrt z) dz",
                 [](CheckContext& ctx) {
                   CheckRecord r;
                   r.tolerance = 1e-8;
                   WorstPair w;
                   for (double t : {0.5, 1.0, 2.0, 5.0}) {
                     const auto s = hankel_series(t, ctx.cfg.series);
                     const auto c = hankel_exp_integral(t, ctx.quad);
                     w.offer(s.value, c.value, s.terms_used + c.evals, s.converged && c.converged);
                   }
                   w.fill(r);
                   return r;
                 }});

  out.push_back({"V6-residue", "Hankel resolvent integral against its pole value, 20 u-points",
                 "(1/2 pi i) int_H dz / (sqrt(z + sqrt z)(1 - z + c)) = 1/sqrt(w + sqrt w)",
                 [](CheckContext& ctx) {
                   CheckRecord r;
                   r.tolerance = 1e-9;
                   WorstPair w;
                   for (int j = 1; j <= 20; ++j) {
                     const double u = j / 21.0;
                     const double c = 16.0 / 3.0 * u * u * (1.0 - u) * (1.0 - u);
                     const auto v = hankel_resolvent_integral(c, HankelPath{}, ctx.quad);
                     const double wv = 1.0 + c;
                     w.offer(v.value, 1.0 / std::sqrt(wv + std::sqrt(wv)), v.evals, v.converged);
                   }
                   w.fill(r);
                   return r;
                 }});

  out.push_back({"V7-threshold", "sqrt B at t0 = (2 + sqrt3)/8", "sqrt B(t0) = sqrt3 - 3/2",
                 [](CheckContext&) {
                   CheckRecord r;
                   r.tolerance = 1e-14;
                   r.lhs = std::sqrt(B(b_threshold()));
                   r.rhs = std::numbers::sqrt3 - 1.5;
                   settle(r, true);
                   return r;
                 }});

  out.push_back({"V8-constants", "largest residual among the exact constant identities",
                 "max |residual| = 0", [](CheckContext&) {
                   CheckRecord r;
                   r.tolerance = 1e-14;
                   double worst = 0.0;
                   for (const auto& id : constant_identities()) {
                     worst = std::max(worst, std::abs(id.residual));
                   }
                   r.lhs = worst;
                   r.rhs = 0.0;
                   settle(r, true);
                   return r;
                 }});

  // Fill in the catalog text for records built inside the lambdas.
  for (auto& spec : out) {
    spec.run = [inner = std::move(spec.run), id = spec.id, desc = spec.description,
                anchor = spec.anchor](CheckContext& ctx) {
      CheckRecord r = inner(ctx);
      r.id = id;
      r.description = desc;
      r.anchor = anchor;
      return r;
    };
  }
  return out;
}

}  // namespace detail

struct CatalogEntry {
  std::string_view id;
  std::string_view description;
  std::string_view anchor;
};

inline const std::vector<detail::CheckSpec>& check_specs() {
  static const std::vector<detail::CheckSpec> specs = detail::build_catalog();
  return specs;
}

inline std::vector<CatalogEntry> catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& s : check_specs()) out.push_back({s.id, s.description, s.anchor});
  return out;
}

inline std::string describe_config(const VerifyConfig& cfg, const std::vector<std::string>& only) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "tol=%.17g series_tol=%.17g quad_tol=%.17g max_evals=%ld timeout_secs=%.17g",
                cfg.tol, cfg.series_tol, cfg.quad.abs_tol, cfg.quad.max_evals, cfg.timeout_secs);
  std::string out = buf;
  out += " only=";
  for (std::size_t i = 0; i < only.size(); ++i) out += (i ? "," : "") + only[i];
  if (only.empty()) out += "all";
  return out;
}

/// Run the selected checks (all when empty) on a bounded worker pool.
/// Records come back in catalog order. Throws UnknownCheck before running
/// anything if a selected id is not in the catalog.
inline Report run_checks(const std::vector<std::string>& selection, const VerifyConfig& cfg = {}) {
  cfg.validate();
  const auto& specs = check_specs();
  std::vector<const detail::CheckSpec*> chosen;
  if (selection.empty()) {
    for (const auto& s : specs) chosen.push_back(&s);
  } else {
    for (const auto& id : selection) {
      if (std::none_of(specs.begin(), specs.end(), [&](const auto& s) { return s.id == id; })) {
        throw UnknownCheck(id);
      }
    }
    for (const auto& s : specs) {
      if (std::find(selection.begin(), selection.end(), s.id) != selection.end()) {
        chosen.push_back(&s);
      }
    }
  }

  detail::RepresentationCache cache(cfg.quad, cfg.series);
  std::vector<CheckRecord> records(chosen.size());
  std::atomic<std::size_t> next{0};
  const auto timeout = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(cfg.timeout_secs));

  auto worker = [&] {
    for (std::size_t i = next++; i < chosen.size(); i = next++) {
      const auto& spec = *chosen[i];
      const auto start = Clock::now();
      QuadratureConfig quad = cfg.quad;
      quad.deadline = start + timeout;
      detail::CheckContext ctx{cfg, quad, cache};
      CheckRecord r;
      try {
        r = spec.run(ctx);
      } catch (const std::exception& e) {
        r = CheckRecord{};
        r.id = spec.id;
        r.description = spec.description;
        r.anchor = spec.anchor;
        r.lhs = std::numeric_limits<double>::quiet_NaN();
        r.rhs = std::numeric_limits<double>::quiet_NaN();
        r.abs_diff = std::numeric_limits<double>::quiet_NaN();
        r.status = Status::fail;
        std::cerr << "check " << spec.id << " failed: " << e.what() << '\n';
      }
      if (r.status == Status::pass && Clock::now() > *quad.deadline) {
        r.status = Status::no_converge;
      }
      r.wall_time_ms = static_cast<long>(
          std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count());
      records[i] = std::move(r);
    }
  };

  unsigned jobs = cfg.jobs ? cfg.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, chosen.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }

  Report report;
  report.records = std::move(records);
  report.config_echo = describe_config(cfg, selection);
  report.overall = std::all_of(report.records.begin(), report.records.end(),
                               [](const CheckRecord& r) { return r.status == Status::pass; })
                       ? Status::pass
                       : Status::fail;
  return report;
}

inline std::string render_table(const Report& report) {
  std::ostringstream out;
  char line[512];
  std::snprintf(line, sizeof line, "%-14s %-20s %-20s %-10s %-10s %-12s %s\n", "id", "lhs", "rhs",
                "|diff|", "tol", "status", "anchor");
  out << line;
  for (const auto& r : report.records) {
    std::snprintf(line, sizeof line, "%-14s %-20.12g %-20.12g %-10.3e %-10.1e %-12s %s\n",
                  r.id.c_str(), r.lhs, r.rhs, r.abs_diff, r.tolerance,
                  std::string(to_string(r.status)).c_str(), r.anchor.c_str());
    out << line;
  }
  return out.str();
}

namespace detail {

inline std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string json_string(std::string_view s) { return nlohmann::json(std::string(s)).dump(); }

}  // namespace detail

/// One JSON document; reals carry 17 significant digits, non-finite reals are null.
inline std::string render_json(const Report& report) {
  using detail::json_number;
  using detail::json_string;
  std::ostringstream out;
  out << "{\n  \"records\": [";
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& r = report.records[i];
    out << (i ? ",\n" : "\n") << "    {"
        << "\"id\": " << json_string(r.id) << ", "
        << "\"description\": " << json_string(r.description) << ", "
        << "\"lhs\": " << json_number(r.lhs) << ", "
        << "\"rhs\": " << json_number(r.rhs) << ", "
        << "\"abs_diff\": " << json_number(r.abs_diff) << ", "
        << "\"tolerance\": " << json_number(r.tolerance) << ", "
        << "\"status\": " << json_string(to_string(r.status)) << ", "
        << "\"anchor\": " << json_string(r.anchor) << ", "
        << "\"evals\": " << r.evals << ", "
        << "\"wall_time_ms\": " << r.wall_time_ms << ", "
        << "\"kind\": " << json_string(to_string(r.kind)) << "}";
  }
  out << (report.records.empty() ? "],\n" : "\n  ],\n");
  out << "  \"tool_version\": " << json_string(report.tool_version) << ",\n"
      << "  \"config_echo\": " << json_string(report.config_echo) << ",\n"
      << "  \"overall\": " << json_string(to_string(report.overall)) << "\n}\n";
  return out.str();
}

/// Inverse of render_json. Throws std::invalid_argument on malformed input.
inline Report parse_report(std::string_view text) {
  const auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw std::invalid_argument("parse_report: not a JSON object");
  }
  auto real = [](const nlohmann::json& v) {
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  auto status = [](const nlohmann::json& v) {
    const auto s = parse_status(v.get<std::string>());
    if (!s) throw std::invalid_argument("parse_report: bad status " + v.dump());
    return *s;
  };
  try {
    Report r;
    for (const auto& j : doc.at("records")) {
      CheckRecord c;
      c.id = j.at("id").get<std::string>();
      c.description = j.at("description").get<std::string>();
      c.lhs = real(j.at("lhs"));
      c.rhs = real(j.at("rhs"));
      c.abs_diff = real(j.at("abs_diff"));
      c.tolerance = real(j.at("tolerance"));
      c.status = status(j.at("status"));
      c.anchor = j.at("anchor").get<std::string>();
      c.evals = j.at("evals").get<long>();
      c.wall_time_ms = j.at("wall_time_ms").get<long>();
      c.kind = j.at("kind").get<std::string>() == "discrepancy" ? CheckKind::discrepancy
                                                                 : CheckKind::agreement;
      r.records.push_back(std::move(c));
    }
    r.tool_version = doc.at("tool_version").get<std::string>();
    r.config_echo = doc.at("config_echo").get<std::string>();
    r.overall = status(doc.at("overall"));
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("parse_report: ") + e.what());
  }
}

}  // namespace grverify
