#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <new>
#include <stdexcept>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "formring/checks.hpp"
#include "formring/errors.hpp"
#include "formring/graded_ring.hpp"
#include "formring/groebner.hpp"
#include "formring/koszul.hpp"
#include "formring/local_cohomology.hpp"
#include "formring/session.hpp"
#include "formring/verdict.hpp"

namespace formring {

inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::json;

// Run-wide overrides; per-command options take precedence.
struct RunOptions {
  std::optional<std::pair<int, int>> window;
  std::optional<int> t_max;
  std::optional<int> margin;
  std::optional<std::uint64_t> seed;  // reserved
  bool timing = false;
};

struct CommandResult {
  std::string command;
  std::string status = "ok";  // ok | error | guard
  Json data = Json::object();
  Json witnesses = Json::array();
  Json window = nullptr;
  double timing_ms = 0;
};

struct Report {
  Json config = Json::object();
  std::vector<CommandResult> results;

  // 0: every command ran; 1: a command failed on its input; 2: a guard
  // tripped or a result rests on unstabilized entries.
  int exit_code() const {
    int code = 0;
    for (const auto& r : results) {
      if (r.status == "guard") return 2;
      if (r.status == "error") code = 1;
    }
    return code;
  }
};

namespace detail {

inline Json entries_json(const CohomologyTable& t) {
  Json a = Json::array();
  for (const auto& [key, e] : t.entries()) a.push_back({key.first, key.second, e.dim});
  return a;
}

inline Json dims_json(const std::map<int, std::size_t>& m) {
  Json a = Json::array();
  for (const auto& [d, c] : m) a.push_back({d, c});
  return a;
}

inline Json admissible_json(const AdmissibleSet& s) {
  if (s.all_integers) return "all";
  if (s.from) return "k >= " + std::to_string(*s.from);
  return s.values;
}

inline Json entry_witness_json(const EntryWitness& w) {
  return {{"kind", "table_entry"}, {"i", w.index}, {"degree", w.degree}, {"position", w.position}, {"dim", w.dim}};
}

inline Json gap_witness_json(const GapViolation& v) {
  return {{"kind", "gap"}, {"i", v.i}, {"j", v.j}, {"p", v.p}, {"q", v.q}, {"p_minus_q", v.p - v.q}};
}

inline Json window_json(const StabilizationConfig& c) { return {c.n_lo, c.n_hi}; }

inline Json table_data(const CohomologyTable& t) {
  Json d;
  d["table"] = entries_json(t);
  Json powers = Json::array(), unstable = Json::array(), finite = Json::array();
  for (const auto& [key, e] : t.entries()) {
    powers.push_back({key.first, key.second, e.power});
    if (!e.stable) unstable.push_back({key.first, key.second});
  }
  for (int i = 0; i <= t.i_max(); ++i) {
    Json row{{"i", i}, {"finite_length", t.row_finite_length(i)}};
    if (t.row_finite_length(i)) row["length"] = t.row_length(i);
    finite.push_back(row);
  }
  d["powers"] = powers;
  d["unstable"] = unstable;
  d["rows"] = finite;
  return d;
}

inline Json surjectivity_json(const SurjectivityInfo& s) {
  return {{"i", s.index}, {"n", s.degree}, {"source_dim", s.source_dim}, {"target_dim", s.target_dim},
          {"rank", s.rank}, {"surjective", s.surjective()}};
}

inline Json annihilator_witness_json(const AnnihilatorWitness& w, const KoszulComplex& k) {
  return {{"kind", "annihilator"}, {"i", w.index}, {"variable", k.sequence()[w.variable].to_string()},
          {"degree", w.degree}, {"power", w.power}, {"cocycle", w.element}};
}

inline Json certificate_json(const TorsionCertificate& c) {
  return {{"kind", "torsion"}, {"element", c.element.to_string()}, {"exponent", c.exponent},
          {"statement", "(" + c.element.to_string() + ")*m^" + std::to_string(c.exponent) + " in I"}};
}

inline Json localh0_data(const LocalH0Report& r) {
  return {{"socle", r.socle.to_string()},
          {"saturation", r.saturation.to_string()},
          {"saturation_exponent", r.saturation_exponent},
          {"socle_dims", dims_json(r.socle_dims)},
          {"saturation_dims", dims_json(r.saturation_dims)},
          {"socle_length", r.socle_length()},
          {"length", r.length()},
          {"f0_A_surjective", to_string(truth_of(r.f0_surjective()))}};
}

inline Json localh0_witnesses(const LocalH0Report& r) {
  Json w = Json::array();
  for (const auto& c : r.certificates)
    if (c.exponent >= 2) w.push_back(certificate_json(c));
  return w;
}

class Runner {
 public:
  Runner(const Session& s, RunOptions opts) : session_(s), opts_(opts) {}

  Report run() {
    Report rep;
    rep.config = config_json();
    for (std::size_t k = 0; k < session_.statements.size(); ++k) {
      const auto& st = session_.statements[k];
      if (auto c = std::get_if<CharDecl>(&st)) {
        characteristic_ = static_cast<std::uint32_t>(c->value);
        ring_.reset();
      } else if (auto v = std::get_if<VarsDecl>(&st)) {
        vars_ = v->names;
        ring_.reset();
      } else if (auto p = std::get_if<ParamDecl>(&st)) {
        params_.emplace_back(p->name, std::pair(p->lo, p->hi));
      } else if (auto d = std::get_if<IdealDecl>(&st)) {
        ideals_.emplace(d->name, std::pair(ring(), *d));
      } else if (auto t = std::get_if<TableDecl>(&st)) {
        rep.results.push_back(timed("synthetic_table", [&](CommandResult& r) { declare_table(*t, r); }));
      } else if (auto c = std::get_if<Command>(&st)) {
        run_command(*c, rep);
      }
    }
    return rep;
  }

 private:
  Json config_json() const {
    Json c;
    c["characteristic_default"] = characteristic_default_json();
    c["window"] = opts_.window ? Json{opts_.window->first, opts_.window->second} : Json("auto");
    c["tmax"] = opts_.t_max ? Json(*opts_.t_max) : Json("auto");
    c["margin"] = opts_.margin.value_or(StabilizationConfig{}.margin);
    c["seed"] = opts_.seed ? Json(*opts_.seed) : Json(nullptr);
    c["saturation_cap"] = kDefaultSaturationCap;
    return c;
  }

  Json characteristic_default_json() const { return default_char_ ? Json(*default_char_) : Json(nullptr); }

 public:
  void set_default_characteristic(std::optional<std::int64_t> p) {
    default_char_ = p;
    if (p) characteristic_ = static_cast<std::uint32_t>(*p);
  }

 private:
  RingPtr ring() {
    if (!ring_) ring_ = Ring::make(vars_, characteristic_);
    return ring_;
  }

  template <class F>
  CommandResult timed(const std::string& name, F&& body) {
    CommandResult r;
    r.command = name;
    auto start = std::chrono::steady_clock::now();
    try {
      body(r);
    } catch (const GuardExceeded& e) {
      r.status = "guard";
      r.data["message"] = e.what();
    } catch (const std::logic_error&) {
      throw;
    } catch (const std::bad_alloc&) {
      r.status = "guard";
      r.data["message"] = "out of memory";
    } catch (const std::exception& e) {
      r.status = "error";
      r.data["message"] = e.what();
    }
    auto end = std::chrono::steady_clock::now();
    if (opts_.timing) r.timing_ms = std::chrono::duration<double, std::milli>(end - start).count();
    return r;
  }

  void declare_table(const TableDecl& t, CommandResult& r) {
    std::vector<std::tuple<int, int, std::size_t>> entries;
    for (const auto& e : t.entries)
      entries.emplace_back(static_cast<int>(e.index), static_cast<int>(e.degree), static_cast<std::size_t>(e.dim));
    auto table = CohomologyTable::synthetic(entries);
    r.data["target"] = t.name;
    r.data["table"] = entries_json(table);
    tables_.insert_or_assign(t.name, std::move(table));
  }

  // Parameter assignments for the parameters an ideal uses, first declared
  // parameter varying slowest.
  std::vector<ParamValues> expansions(const IdealDecl& d) const {
    std::set<std::string> declared, used;
    for (const auto& [name, range] : params_) declared.insert(name);
    for (const auto& g : d.generators) collect_params(g, declared, used);
    std::vector<ParamValues> out{{}};
    for (const auto& [name, range] : params_) {
      if (!used.contains(name)) continue;
      std::vector<ParamValues> next;
      for (const auto& base : out)
        for (auto v = range.first; v <= range.second; ++v) {
          auto p = base;
          p[name] = v;
          next.push_back(std::move(p));
        }
      out = std::move(next);
      if (out.size() > 10000) throw GuardExceeded("parameter expansion too large");
    }
    return out;
  }

  StabilizationConfig config_for_command(const Command& c, const GradedQuotientRing& g) const {
    StabilizationConfig cfg;
    if (auto w = c.option("window")) {
      cfg.n_lo = static_cast<int>(w->lo);
      cfg.n_hi = static_cast<int>(*w->hi);
    } else if (opts_.window) {
      cfg.n_lo = opts_.window->first;
      cfg.n_hi = opts_.window->second;
    } else {
      auto d = StabilizationConfig::defaults_for(g);
      cfg.n_lo = d.n_lo;
      cfg.n_hi = d.n_hi;
    }
    if (auto m = c.option("margin")) cfg.margin = static_cast<int>(m->lo);
    else if (opts_.margin) cfg.margin = *opts_.margin;
    if (auto t = c.option("tmax")) cfg.t_max = static_cast<int>(t->lo);
    else if (opts_.t_max) cfg.t_max = *opts_.t_max;
    else cfg.t_max = StabilizationConfig::default_t_max(g, cfg.n_lo, cfg.margin);
    cfg.validate();
    return cfg;
  }

  void run_command(const Command& c, Report& rep) {
    if (auto t = tables_.find(c.target); t != tables_.end()) {
      rep.results.push_back(timed(c.verb, [&](CommandResult& r) {
        r.data["target"] = c.target;
        table_check(c, t->second, r);
      }));
      return;
    }
    const auto& [ring, decl] = ideals_.at(c.target);
    std::vector<ParamValues> expanded;
    try {
      expanded = expansions(decl);
    } catch (const GuardExceeded& e) {
      CommandResult r;
      r.command = c.verb;
      r.status = "guard";
      r.data = {{"target", c.target}, {"message", e.what()}};
      rep.results.push_back(std::move(r));
      return;
    }
    for (const auto& params : expanded) {
      rep.results.push_back(timed(c.verb, [&](CommandResult& r) {
        r.data["target"] = c.target;
        if (!params.empty()) r.data["params"] = params;
        std::vector<Polynomial> gens;
        for (const auto& g : decl.generators) gens.push_back(eval_polynomial(g, ring, params));
        Ideal ideal(ring, std::move(gens));
        r.data["ideal"] = ideal.to_string();
        ideal_command(c, ideal, r);
      }));
    }
  }

  void table_check(const Command& c, const CohomologyTable& table, CommandResult& r) {
    const int t = static_cast<int>(c.option("t")->lo);
    if (c.verb == "gap") gap_data(check_thm13_gap(table, t), r);
    else diag_data(check_thm12_hypothesis(table, t), r);
  }

  static void gap_data(const GapResult& g, CommandResult& r) {
    r.data["t"] = g.t;
    r.data["thm13_gap_hypothesis"] = to_string(g.truth);
    Json v = Json::array();
    for (const auto& x : g.violations) {
      v.push_back({x.i, x.j, x.p, x.q});
      r.witnesses.push_back(gap_witness_json(x));
    }
    r.data["violations"] = v;
    if (!g.note.empty()) r.data["note"] = g.note;
  }

  static void diag_data(const Thm12Result& d, CommandResult& r) {
    r.data["t"] = d.t;
    r.data["thm12_hypothesis"] = to_string(d.truth);
    r.data["thm12_admissible_k"] = admissible_json(d.admissible);
    for (const auto& w : d.violating) r.witnesses.push_back(entry_witness_json(w));
    if (!d.note.empty()) r.data["note"] = d.note;
  }

  // Inconclusive verdicts caused by unstabilized entries trip the guard.
  static void mark_unstable(CommandResult& r, bool unstable) {
    if (unstable) {
      r.status = "guard";
      r.data["message"] = "result depends on entries that did not stabilize";
    }
  }

  static bool table_unstable(const CohomologyTable& t) {
    for (const auto& [key, e] : t.entries())
      if (!e.stable) return true;
    return false;
  }

  void ideal_command(const Command& c, const Ideal& ideal, CommandResult& r) {
    if (c.verb == "localh0") {
      auto h = local_h0_report(ideal);
      r.data.update(localh0_data(h));
      r.witnesses = localh0_witnesses(h);
      return;
    }
    if (c.verb == "cor41") {
      cor41(c, ideal, r);
      return;
    }
    Ideal in = initial_forms_ideal(ideal);
    r.data["tangent_cone"] = in.canonical().to_string();
    if (c.verb == "tangent_cone") return;

    GradedQuotientRing g(in);
    if (g.is_zero_ring()) throw DomainError("form ring is the zero ring");
    const int d = g.krull_dimension();
    r.data["dimension"] = d;

    if (c.verb == "koszul") {
      koszul(c, g, r);
      return;
    }

    StabilizationConfig cfg = config_for_command(c, g);
    r.window = window_json(cfg);
    r.data["tmax"] = cfg.t_max;
    r.data["margin"] = cfg.margin;
    LocalCohomology lc(g, cfg);
    const int nv = static_cast<int>(g.nvars());

    if (c.verb == "table") {
      int imax = c.option("imax") ? static_cast<int>(c.option("imax")->lo) : nv;
      auto t = lc.table(imax);
      r.data.update(table_data(t));
      r.data["imax"] = imax;
      mark_unstable(r, table_unstable(t));
    } else if (c.verb == "stuckrad") {
      auto s = stuckrad_test(lc);
      stuckrad_data(s, r);
      mark_unstable(r, s.truth == Truth::inconclusive);
    } else if (c.verb == "quasibuchsbaum") {
      auto q = quasi_buchsbaum_test(lc);
      quasi_data(q, lc, r);
      mark_unstable(r, q.truth == Truth::inconclusive);
    } else {
      const int t = c.option("t") ? static_cast<int>(c.option("t")->lo) : d;
      if (t < 0 || t > nv) throw DomainError("t out of range");
      auto table = lc.table(t);
      r.data["table"] = entries_json(table);
      if (c.verb == "gap") {
        auto gr = check_thm13_gap(table, t);
        gap_data(gr, r);
        mark_unstable(r, gr.truth == Truth::inconclusive && table_unstable(table));
      } else {
        auto dr = check_thm12_hypothesis(table, t);
        diag_data(dr, r);
        mark_unstable(r, dr.truth == Truth::inconclusive && table_unstable(table));
      }
    }
  }

  void koszul(const Command& c, const GradedQuotientRing& g, CommandResult& r) {
    auto need = [&](const char* key) {
      auto o = c.option(key);
      if (!o) throw DomainError(std::string("koszul needs ") + key + "=");
      return static_cast<int>(o->lo);
    };
    const int i = need("i"), n = need("n");
    const int t = c.option("t") ? static_cast<int>(c.option("t")->lo) : 1;
    KoszulComplex k(g);
    if (t > 64) throw GuardExceeded("Koszul power too large");
    const auto& piece = k.cohomology(i, n, t);
    r.data["i"] = i;
    r.data["n"] = n;
    r.data["power"] = t;
    r.data["dim"] = piece.dim();
    r.data["cocycle_dim"] = piece.cocycle_dim;
    r.data["coboundary_rank"] = piece.coboundary_rank;
    Json reps = Json::array();
    for (const auto& v : piece.representatives()) reps.push_back(k.describe(i, n, t, v));
    r.data["representatives"] = reps;
  }

  static void stuckrad_data(const SurjectivityReport& s, CommandResult& r) {
    r.data["G_buchsbaum"] = to_string(s.truth);
    Json maps = Json::array(), unstable = Json::array();
    for (const auto& m : s.maps) maps.push_back({m.index, m.degree, m.source_dim, m.target_dim, m.rank});
    for (const auto& [i, n] : s.unstable) unstable.push_back({i, n});
    r.data["surjectivity"] = maps;
    r.data["unstable"] = unstable;
    for (const auto& f : s.failures) {
      Json w = surjectivity_json(f);
      w["kind"] = "not_surjective";
      r.witnesses.push_back(w);
    }
  }

  static void quasi_data(const QuasiBuchsbaumReport& q, const LocalCohomology& lc, CommandResult& r) {
    r.data["G_quasi_buchsbaum"] = to_string(q.truth);
    Json rows = Json::array();
    for (std::size_t i = 0; i < q.rows.size(); ++i) {
      Json row{{"i", i}, {"annihilated", to_string(q.rows[i].truth)}};
      if (!q.rows[i].note.empty()) row["note"] = q.rows[i].note;
      rows.push_back(row);
      if (q.rows[i].witness) r.witnesses.push_back(annihilator_witness_json(*q.rows[i].witness, lc.koszul()));
    }
    r.data["rows"] = rows;
  }

  void cor41(const Command& c, const Ideal& ideal, CommandResult& r) {
    Ideal in = initial_forms_ideal(ideal);
    GradedQuotientRing g(in);
    if (g.is_zero_ring()) throw DomainError("form ring is the zero ring");
    StabilizationConfig cfg = config_for_command(c, g);
    DescentReport rep = corollary41_verdict(ideal, cfg);
    r.window = window_json(rep.config);
    auto& d = r.data;
    d["A_ideal"] = rep.a_ideal.to_string();
    d["G_ideal"] = rep.g_ideal.canonical().to_string();
    d["dimension"] = rep.dimension;
    d["tmax"] = rep.config.t_max;
    d["margin"] = rep.config.margin;
    d["table"] = entries_json(rep.table);
    d["thm11_finiteness_hypothesis"] = to_string(rep.finiteness_hypothesis);
    d["thm11_A_finite_length"] =
        rep.finiteness_hypothesis == Truth::yes ? "yes (derived from the G side)" : "not derived";
    d["thm12_hypothesis"] = to_string(rep.thm12.truth);
    d["thm12_admissible_k"] = admissible_json(rep.thm12.admissible);
    d["thm13_gap_hypothesis"] = to_string(rep.gap.truth);
    d["G_buchsbaum"] = to_string(rep.g_buchsbaum.truth);
    d["G_quasi_buchsbaum"] = to_string(rep.g_quasi_buchsbaum.truth);
    d["f0_A_surjective"] = to_string(truth_of(rep.a_h0.f0_surjective()));
    d["A_buchsbaum"] = to_string(rep.a_buchsbaum);
    d["A_buchsbaum_source"] = rep.a_buchsbaum_source;
    d["descent"] = rep.descent_applicable ? "applicable" : "not applicable";
    d["local_h0"] = localh0_data(rep.a_h0);
    Json lengths;
    lengths["G_H0"] = rep.length.g_length ? Json(*rep.length.g_length) : Json(nullptr);
    lengths["A_H0"] = rep.length.a_length;
    lengths["inequality"] = to_string(rep.length.truth);
    lengths["equality_i0"] = rep.h0_length_equal ? Json(to_string(truth_of(*rep.h0_length_equal))) : Json("not asserted");
    lengths["higher_i"] = "not checked";
    d["lengths"] = lengths;
    for (const auto& w : rep.thm12.violating) r.witnesses.push_back(entry_witness_json(w));
    for (const auto& f : rep.g_buchsbaum.failures) {
      Json w = surjectivity_json(f);
      w["kind"] = "not_surjective";
      r.witnesses.push_back(w);
    }
    for (const auto& w : localh0_witnesses(rep.a_h0)) r.witnesses.push_back(w);
    mark_unstable(r, rep.g_buchsbaum.truth == Truth::inconclusive ||
                         (rep.thm12.truth == Truth::inconclusive && table_unstable(rep.table)));
  }

  const Session& session_;
  RunOptions opts_;
  std::optional<std::int64_t> default_char_;
  std::uint32_t characteristic_ = PrimeField::kDefaultCharacteristic;
  std::vector<std::string> vars_;
  RingPtr ring_;
  std::vector<std::pair<std::string, std::pair<std::int64_t, std::int64_t>>> params_;
  std::map<std::string, std::pair<RingPtr, IdealDecl>> ideals_;
  std::map<std::string, CohomologyTable> tables_;
};

}  // namespace detail

inline Report run_session(const Session& s, RunOptions opts = {}, std::optional<std::int64_t> default_char = {}) {
  detail::Runner runner(s, opts);
  runner.set_default_characteristic(default_char);
  return runner.run();
}

inline Json to_json(const Report& r) {
  Json results = Json::array();
  for (const auto& c : r.results)
    results.push_back({{"command", c.command},
                       {"status", c.status},
                       {"data", c.data},
                       {"witnesses", c.witnesses},
                       {"window", c.window},
                       {"timing_ms", c.timing_ms}});
  return {{"version", kVersion}, {"config", r.config}, {"results", results}};
}

namespace detail {

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void flatten(const Json& v, const std::string& prefix, std::string& out) {
  if (v.is_object() && !v.empty()) {
    for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  out += prefix + ": " + scalar_text(v) + "\n";
}

}  // namespace detail

// One "key: value" line per leaf; strings unquoted, arrays as compact JSON.
inline std::string to_text(const Report& r) {
  std::string out = "formring " + std::string(kVersion) + "\n";
  for (const auto& c : r.results) {
    out += "\n[" + c.command + "] status: " + c.status + "\n";
    if (!c.window.is_null()) out += "window: " + c.window.dump() + "\n";
    detail::flatten(c.data, "", out);
    for (const auto& w : c.witnesses) out += "witness: " + w.dump() + "\n";
    if (c.timing_ms > 0) out += "timing_ms: " + Json(c.timing_ms).dump() + "\n";
  }
  return out;
}

}  // namespace formring
