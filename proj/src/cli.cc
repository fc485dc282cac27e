// Copyright 2026 The xfair Authors
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


#include "xfair/cli.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "xfair/abduction.h"
#include "xfair/cf_semantics.h"
#include "xfair/fairness.h"
#include "xfair/families.h"
#include "xfair/game.h"
#include "xfair/io.h"
#include "xfair/service.h"
#include "xfair/structure.h"
#include "xfair/transforms.h"

namespace xfair {
namespace {

struct Options {
  std::string model;
  std::string instance;
  std::string target;
  std::optional<int> radius;
  std::string factors;
  std::string conundrum;
  std::string variant;
  std::string policy;
  std::string adversary;
  uint64_t seed = 0;
  int jobs = 1;
  bool verbose = false;

  std::string formula;
  bool complete = false;
  std::string mode = "radius";
  std::optional<int> sweep;
  std::string config;
  std::string scenario;
  int max_moves = 1 << 20;
  int games = 1;
  std::string scaling;
  bool csv = false;
  std::optional<int> flip_search;
  std::string host = "0.0.0.0";
  std::optional<int> port;
};

absl::Status Usage(std::string_view message) {
  return absl::InvalidArgumentError(std::string(message));
}

absl::Status Required(const std::string& value, const char* flag) {
  if (value.empty()) return Usage(absl::StrCat(flag, " is required"));
  return absl::OkStatus();
}

// Everything a single-instance command needs, loaded from flags.
struct Query {
  Classifier c;
  World focal;
  LabelId target = 0;
  int radius = 0;
};

absl::StatusOr<Classifier> LoadModel(const Options& o) {
  if (absl::Status s = Required(o.model, "--model"); !s.ok()) return s;
  absl::StatusOr<Json> doc = ReadJsonFile(o.model);
  if (!doc.ok()) return doc.status();
  return ClassifierFromJson(*doc);
}

absl::StatusOr<World> LoadInstance(const Options& o, const Classifier& c) {
  if (absl::Status s = Required(o.instance, "--instance"); !s.ok()) return s;
  const bool bits = std::all_of(o.instance.begin(), o.instance.end(),
                                [](char ch) { return ch == '0' || ch == '1'; });
  if (bits) return WorldFromJson(Json{{"bits", o.instance}}, c.space());
  absl::StatusOr<Json> doc = ReadJsonFile(o.instance);
  if (!doc.ok()) return doc.status();
  return WorldFromJson(*doc, c.space());
}

absl::StatusOr<Query> LoadQuery(const Options& o, bool need_target) {
  Query q;
  absl::StatusOr<Classifier> c = LoadModel(o);
  if (!c.ok()) return c.status();
  q.c = *std::move(c);
  absl::StatusOr<World> focal = LoadInstance(o, q.c);
  if (!focal.ok()) return focal.status();
  q.focal = *focal;
  if (need_target) {
    if (absl::Status s = Required(o.target, "--target"); !s.ok()) return s;
    absl::StatusOr<LabelId> target = LabelFromJson(Json(o.target), q.c);
    if (!target.ok()) return target.status();
    q.target = *target;
  }
  q.radius = o.radius.value_or(q.c.width());
  if (q.radius < 0) return Usage("--radius must be >= 0");
  return q;
}

absl::StatusOr<ConundrumConfig> LoadConundrum(const Options& o,
                                              const FeatureSpace& space) {
  ConundrumConfig out;
  if (!o.conundrum.empty()) {
    absl::StatusOr<Json> doc = ReadJsonFile(o.conundrum);
    if (!doc.ok()) return doc.status();
    absl::StatusOr<ConundrumConfig> c = ConundrumConfigFromJson(*doc, space);
    if (!c.ok()) return c.status();
    out = *std::move(c);
  }
  if (!o.factors.empty()) {
    absl::StatusOr<Json> doc = ReadJsonFile(o.factors);
    if (!doc.ok()) return doc.status();
    if (doc->is_array()) *doc = Json{{"factors", *doc}};
    absl::StatusOr<ConundrumConfig> f = ConundrumConfigFromJson(*doc, space);
    if (!f.ok()) return f.status();
    for (PrejudicialFactor& p : f->factors) out.factors.push_back(std::move(p));
  }
  return out;
}

Json Worlds(const std::vector<World>& worlds) {
  Json out = Json::array();
  for (const World& w : worlds) out.push_back(w.ToString());
  return out;
}

Json Literals(const LiteralSet& l, const FeatureSpace& space) {
  return LiteralSetToJson(l, space)["literals"];
}

Json Header(const Query& q) {
  return Json{{"focal", q.focal.ToString()},
              {"target", q.c.label_name(q.target)},
              {"radius", q.radius}};
}

absl::StatusOr<Json> Eval(const Options& o, std::ostream& err) {
  absl::StatusOr<Query> q = LoadQuery(o, false);
  if (!q.ok()) return q.status();
  Json out;
  out["label"] = q->c.label_name(q->c.Predict(q->focal));
  if (!o.formula.empty()) {
    const bool conditional = o.formula.find("=>") != std::string::npos;
    if (conditional) {
      absl::StatusOr<Counterfactual> cf = ParseCounterfactual(o.formula, q->c);
      if (!cf.ok()) return cf.status();
      absl::StatusOr<bool> holds = EvalCounterfactual(q->focal, *cf, q->c);
      if (!holds.ok()) return holds.status();
      absl::StatusOr<std::vector<World>> closest =
          ClosestWorlds(q->focal, cf->antecedent, q->c);
      if (!closest.ok()) return closest.status();
      out["formula"] = cf->ToString(q->c);
      out["holds"] = *holds;
      out["closest"] = Worlds(*closest);
    } else {
      absl::StatusOr<Formula> f = ParseFormula(o.formula, q->c);
      if (!f.ok()) return f.status();
      absl::StatusOr<bool> holds = Satisfies(q->focal, *f, q->c);
      if (!holds.ok()) return holds.status();
      out["formula"] = f->ToString(q->c);
      out["holds"] = *holds;
    }
  }
  if (o.verbose) err << q->focal.ToString() << " -> " << out["label"].get<std::string>() << "\n";
  return out;
}

absl::StatusOr<Json> Explain(const Options& o, std::ostream& err) {
  absl::StatusOr<Query> q = LoadQuery(o, true);
  if (!q.ok()) return q.status();
  absl::StatusOr<OverdeterminationSet> mc =
      MinimalCounterfactuals(q->c, q->focal, q->target, q->radius);
  if (!mc.ok()) return mc.status();
  absl::StatusOr<std::vector<World>> boundary =
      Boundary(q->c, q->focal, q->target, q->radius);
  if (!boundary.ok()) return boundary.status();
  Json out = Header(*q);
  Json deltas = Json::array();
  for (const Transformation& t : mc->deltas) {
    deltas.push_back(TransformationToJson(t, q->c.space()));
  }
  out["minimal_counterfactuals"] = std::move(deltas);
  out["overdetermined"] = mc->overdetermined();
  out["boundary"] = Worlds(*boundary);
  if (o.complete) {
    absl::StatusOr<CompleteExplanation> e =
        CompleteExplanationFor(q->c, q->focal, q->target, q->radius);
    if (!e.ok()) return e.status();
    Json members = Json::array();
    for (const ExplanationMember& m : e->members) {
      members.push_back(Json{{"counterfactual", m.counterfactual.ToString(q->c)},
                             {"distance", m.distance},
                             {"closest", Worlds(m.closest)}});
    }
    out["complete_explanation"] = std::move(members);
  }
  if (o.verbose) {
    err << mc->deltas.size() << " minimal counterfactual(s)"
        << (mc->overdetermined() ? ", overdetermined" : "") << "\n";
  }
  return out;
}

absl::StatusOr<Json> Abduce(const Options& o, std::ostream& err) {
  absl::StatusOr<Query> q = LoadQuery(o, false);
  if (!q.ok()) return q.status();
  EntailmentOracle oracle(OracleBackend::kRulePrune);
  absl::StatusOr<LiteralSet> l = AbductiveExplanation(oracle, q->c, q->focal);
  if (!l.ok()) return l.status();
  if (o.verbose) {
    err << l->size() << " literal(s), " << oracle.calls() << " oracle calls\n";
  }
  return Json{{"literals", Literals(*l, q->c.space())}};
}

absl::StatusOr<Json> Audit(const Options& o, std::ostream& err) {
  absl::StatusOr<Query> q = LoadQuery(o, false);
  if (!q.ok()) return q.status();
  absl::StatusOr<ConundrumConfig> cc = LoadConundrum(o, q->c.space());
  if (!cc.ok()) return cc.status();
  if (cc->factors.empty()) return Usage("audit needs --factors");
  std::vector<World> population;
  for (World w : WorldRange(q->c.width())) population.push_back(w);
  Json out;
  out["focal"] = q->focal.ToString();
  out["radius"] = q->radius;
  Json factors = Json::array();
  for (const PrejudicialFactor& p : cc->factors) {
    absl::StatusOr<std::optional<BiasWitness>> bias =
        BiasedDependency(q->c, p, q->focal, q->radius);
    if (!bias.ok()) return bias.status();
    Json entry;
    entry["factor"] = p.name();
    entry["biased"] = bias->has_value();
    if (bias->has_value()) {
      const BiasWitness& w = **bias;
      entry["witness"] = Json{
          {"delta", TransformationToJson(w.delta, q->c.space())},
          {"indices", IndicesToJson(w.delta.mask(), q->c.space())},
          {"eta", q->c.label_name(w.eta)},
          {"pi", q->c.label_name(w.pi)}};
    } else {
      entry["witness"] = nullptr;
    }
    absl::StatusOr<Definability> def = ImplicitlyDefinable(q->c, p, population);
    if (!def.ok()) return def.status();
    entry["definable"] = def->formula ? Json(def->formula->ToString(q->c)) : Json();
    entry["degenerate"] = def->degenerate;
    if (o.verbose) {
      err << p.name() << ": " << (bias->has_value() ? "biased" : "no bias found")
          << "\n";
    }
    factors.push_back(std::move(entry));
  }
  out["factors"] = std::move(factors);
  return out;
}

Json ChainJson(const RefinementChain& chain, const FeatureSpace& space) {
  Json out = Json::array();
  for (size_t i = 0; i < chain.steps.size(); ++i) {
    out.push_back(Json{{"literals", Literals(chain.steps[i], space)},
                       {"supports", static_cast<bool>(chain.support[i])}});
  }
  return out;
}

absl::StatusOr<Json> FlipDegreeCommand(const Options& o, std::ostream& err) {
  absl::StatusOr<Query> q = LoadQuery(o, true);
  if (!q.ok()) return q.status();
  absl::StatusOr<FlipDegreeResult> r =
      FlipDegree(q->c, q->focal, q->target, q->radius);
  if (!r.ok()) return r.status();
  absl::StatusOr<Shape> shape =
      ClassifyShape(q->c, q->focal, q->target, q->radius);
  if (!shape.ok()) return shape.status();
  Json out = Header(*q);
  out["flip_degree"] = r->degree;
  out["shape"] = shape->ToString();
  out["witness"] = ChainJson(r->witness, q->c.space());
  if (o.verbose) err << "flip degree " << r->degree << "\n";
  return out;
}

Json VerdictJson(const ConvexityVerdict& v) {
  Json out{{"convex", v.convex}};
  if (!v.convex) out["witness"] = Worlds(v.witness);
  return out;
}

absl::StatusOr<RegionMode> ParseMode(const std::string& mode) {
  if (mode == "radius") return RegionMode::kWithinRadius;
  if (mode == "component") return RegionMode::kConnectedComponent;
  return Usage(absl::StrCat("unknown --mode '", mode, "' (radius or component)"));
}

absl::Status Sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const int n = *o.sweep;
  if (n < 1 || n > 4) return Usage("--sweep takes n in 1..4");
  absl::StatusOr<RegionMode> mode = ParseMode(o.mode);
  if (!mode.ok()) return mode.status();
  absl::StatusOr<HarnessReport> report =
      StructureSweep(AllBooleanFunctions(n), o.radius.value_or(-1), *mode);
  if (!report.ok()) return report.status();
  for (const HarnessRow& row : report->rows) {
    out << HarnessRowToJson(row).dump() << "\n";
  }
  out << Json{{"agreement_matrix", AgreementMatrixToJson(report->matrix)}}.dump()
      << "\n";
  if (o.verbose) {
    err << report->rows.size() << " rows, "
        << report->matrix.implication_violations << " implication violations\n";
  }
  return absl::OkStatus();
}

absl::StatusOr<Json> StructureCommand(const Options& o, std::ostream& err) {
  absl::StatusOr<Query> q = LoadQuery(o, true);
  if (!q.ok()) return q.status();
  absl::StatusOr<RegionMode> mode = ParseMode(o.mode);
  if (!mode.ok()) return mode.status();
  absl::StatusOr<LocalStructureReport> r =
      AnalyzeLocalStructure(q->c, q->focal, q->target, q->radius, *mode);
  if (!r.ok()) return r.status();
  Json out = Header(*q);
  out["flip_degree"] = r->flip.degree;
  out["shape"] = r->shape.ToString();
  out["region"] = Json{{"mode", o.mode},
                       {"interior", r->region.interior.size()},
                       {"boundary", Worlds(r->region.boundary)}};
  Json convexity;
  for (const ConvexityVerdict& v : r->convexity) {
    convexity[NotionName(v.notion)] = VerdictJson(v);
  }
  out["convexity"] = std::move(convexity);
  if (o.verbose) {
    err << "flip degree " << r->flip.degree << ", " << r->shape.ToString()
        << "\n";
  }
  return out;
}

absl::StatusOr<Json> FairSet(const Options& o, std::ostream& err) {
  absl::StatusOr<Query> q = LoadQuery(o, true);
  if (!q.ok()) return q.status();
  absl::StatusOr<ConundrumConfig> cc = LoadConundrum(o, q->c.space());
  if (!cc.ok()) return cc.status();
  if (!cc->has_spec) return Usage("fair-set needs --conundrum");
  absl::StatusOr<FairAdequateSet> set = ComputeFairAdequateSet(
      q->c, q->focal, q->target, q->radius, cc->spec, cc->factors);
  if (!set.ok()) return set.status();
  Json out = Header(*q);
  out["conundrum"] = ConundrumToJson(cc->spec, q->c.space());
  Json deltas = Json::array();
  for (const Transformation& t : set->deltas) {
    deltas.push_back(TransformationToJson(t, q->c.space()));
  }
  out["fair_set"] = std::move(deltas);
  Json certificates = Json::array();
  for (const ConstraintVerdict& v : set->certificates) {
    certificates.push_back(ConstraintVerdictToJson(v, q->c.space()));
  }
  out["certificates"] = std::move(certificates);
  out["overdetermined"] = set->overdetermination.overdetermined();
  if (o.verbose) err << set->deltas.size() << " transformation(s)\n";
  return out;
}

absl::StatusOr<GameConfig> LoadGameConfig(const Options& o) {
  GameConfig config;
  if (!o.config.empty() || !o.scenario.empty()) {
    Json doc;
    if (!o.scenario.empty()) {
      doc = Json{{"scenario", o.scenario}};
    } else {
      absl::StatusOr<Json> file = ReadJsonFile(o.config);
      if (!file.ok()) return file.status();
      doc = *std::move(file);
    }
    absl::StatusOr<GameConfig> c = GameConfigFromJson(doc);
    if (!c.ok()) return c.status();
    config = *std::move(c);
    if (o.radius) config.radius = *o.radius;
  } else {
    absl::StatusOr<Query> q = LoadQuery(o, true);
    if (!q.ok()) return q.status();
    absl::StatusOr<ConundrumConfig> cc = LoadConundrum(o, q->c.space());
    if (!cc.ok()) return cc.status();
    if (!cc->has_spec) return Usage("game-simulate needs --conundrum");
    config.classifier = q->c;
    config.focal = q->focal;
    config.target = q->target;
    config.radius = q->radius;
    config.conundrum = cc->spec;
    config.factors = cc->factors;
  }
  if (!o.variant.empty()) {
    absl::StatusOr<Variant> v = ParseVariant(o.variant);
    if (!v.ok()) return v.status();
    config.variant = *v;
  }
  if (!o.adversary.empty()) {
    absl::StatusOr<AdversaryPolicy> p = ParsePolicy(o.adversary);
    if (!p.ok()) return p.status();
    config.policy = *p;
  }
  config.seed = o.seed;
  return config;
}

ExplaineePolicy DefaultPolicy(Variant v) {
  switch (v) {
    case Variant::kRestriction:
      return ExplaineePolicy::kExhaustive;
    case Variant::kForcing:
      return ExplaineePolicy::kDirectedLocalSearch;
    case Variant::kChallenge:
      return ExplaineePolicy::kConundrumChallenger;
  }
  return ExplaineePolicy::kExhaustive;
}

// Runs fn(0..count-1) on up to `jobs` threads.
void ParallelFor(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::clamp(jobs, 1, std::max(count, 1));
  std::atomic<int> next{0};
  std::vector<std::thread> threads;
  for (int j = 0; j < jobs; ++j) {
    threads.emplace_back([&] {
      for (int i = next++; i < count; i = next++) fn(i);
    });
  }
  for (std::thread& t : threads) t.join();
}

Json SimulationJson(const SimulationResult& r, const GameConfig& config,
                    ExplaineePolicy policy) {
  Json out;
  out["variant"] = VariantName(config.variant);
  out["adversary"] = PolicyName(config.policy);
  out["explainee"] = ExplaineePolicyName(policy);
  out["seed"] = config.seed;
  out["status"] = StatusName(r.status);
  out["explainee_moves"] = r.counters.explainee_moves;
  out["oracle_calls"] = r.counters.adversary_oracle_calls;
  out["hidden_size"] = r.hidden_size;
  if (!r.cost_trace.empty()) out["cost_trace"] = r.cost_trace;
  out["transcript"] = TranscriptToJson(r.transcript, config.classifier);
  return out;
}

absl::Status Scaling(const Options& o, std::ostream& out, std::ostream& err) {
  int lo = 0;
  int hi = 0;
  char dash = 0;
  std::istringstream range(o.scaling);
  if (!(range >> lo)) return Usage("--scaling takes K or K1-K2");
  hi = lo;
  if (range >> dash) {
    if (dash != '-' || !(range >> hi)) return Usage("--scaling takes K or K1-K2");
  }
  if (lo < 0 || hi < lo || hi > 16) return Usage("--scaling range must lie in 0..16");
  struct Task {
    Variant variant;
    int k;
    absl::StatusOr<SimulationResult> result = absl::UnknownError("not run");
  };
  std::vector<Task> tasks;
  for (int k = lo; k <= hi; ++k) {
    tasks.push_back({Variant::kRestriction, k});
    tasks.push_back({Variant::kForcing, k});
  }
  ParallelFor(static_cast<int>(tasks.size()), o.jobs, [&](int i) {
    const ScalingInstance s = ScalingFamily(tasks[i].k);
    GameConfig config = MakeConfig(s.classifier, s.instance, tasks[i].variant,
                                   AdversaryPolicy::kAdversarial, o.seed);
    tasks[i].result =
        Simulate(config, DefaultPolicy(tasks[i].variant), o.max_moves);
  });
  Json rows = Json::array();
  double c = 0;
  if (o.csv) out << "variant,k,explainee_moves,oracle_calls\n";
  for (const Task& t : tasks) {
    if (!t.result.ok()) return t.result.status();
    const int64_t moves = t.result->counters.explainee_moves;
    const int64_t calls = t.result->counters.adversary_oracle_calls;
    const int n = t.k + 3;
    if (t.variant == Variant::kForcing) {
      c = std::max(c, static_cast<double>(moves) / (n * n));
    }
    if (o.csv) {
      out << VariantName(t.variant) << "," << t.k << "," << moves << ","
          << calls << "\n";
    }
    rows.push_back(Json{{"variant", VariantName(t.variant)},
                        {"k", t.k},
                        {"status", StatusName(t.result->status)},
                        {"explainee_moves", moves},
                        {"oracle_calls", calls}});
  }
  if (!o.csv) {
    out << Json{{"rows", rows}, {"forcing_moves_per_n_squared", c}}.dump(2)
        << "\n";
  }
  if (o.verbose) err << "forcing moves / n^2 <= " << c << "\n";
  return absl::OkStatus();
}

absl::StatusOr<Json> FlipSearch(const Options& o, std::ostream& err) {
  absl::StatusOr<Query> q = LoadQuery(o, true);
  if (!q.ok()) return q.status();
  absl::StatusOr<FlipSearchResult> r =
      FlipLocalSearch(q->c, q->focal, q->target, *o.flip_search, o.seed);
  if (!r.ok()) return r.status();
  Json out = Header(*q);
  out["targets"] = Worlds(r->targets);
  out["solutions"] = Worlds(r->solutions);
  Json descents = Json::array();
  for (const Descent& d : r->descents) {
    descents.push_back(Json{{"end", d.end.ToString()}, {"trace", d.trace}});
  }
  out["descents"] = std::move(descents);
  if (o.verbose) {
    err << r->solutions.size() << " of " << r->targets.size()
        << " targets reached in " << r->descents.size() << " descents\n";
  }
  return out;
}

absl::StatusOr<Json> GameSimulate(const Options& o, std::ostream& err) {
  if (o.flip_search) return FlipSearch(o, err);
  absl::StatusOr<GameConfig> config = LoadGameConfig(o);
  if (!config.ok()) return config.status();
  ExplaineePolicy policy = DefaultPolicy(config->variant);
  if (!o.policy.empty()) {
    absl::StatusOr<ExplaineePolicy> p = ParseExplaineePolicy(o.policy);
    if (!p.ok()) return p.status();
    policy = *p;
  }
  if (o.games < 1) return Usage("--games must be >= 1");
  std::vector<absl::StatusOr<SimulationResult>> results(
      o.games, absl::UnknownError("not run"));
  std::vector<GameConfig> configs(o.games, *config);
  ParallelFor(o.games, o.jobs, [&](int i) {
    configs[i].seed = o.seed + i;
    results[i] = Simulate(configs[i], policy, o.max_moves);
  });
  Json games = Json::array();
  for (int i = 0; i < o.games; ++i) {
    if (!results[i].ok()) return results[i].status();
    games.push_back(SimulationJson(*results[i], configs[i], policy));
    if (o.verbose) {
      err << "seed " << configs[i].seed << ": " << StatusName(results[i]->status)
          << " after " << results[i]->counters.explainee_moves << " moves ("
          << results[i]->wall_seconds << " s)\n";
    }
  }
  if (o.games == 1) return games[0];
  return Json{{"games", std::move(games)}};
}

int ExitCode(const absl::Status& s) {
  switch (s.code()) {
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kOutOfRange:
      return 2;
    default:
      return 1;
  }
}

int Report(const absl::Status& s, std::ostream& out, std::ostream& err) {
  const int code = ExitCode(s);
  const std::string message(s.message());
  if (code == 2) {
    err << "error: " << message << "\n";
  } else {
    out << Json{{"error", message}}.dump(2) << "\n";
  }
  return code;
}

void AddQueryFlags(CLI::App* cmd, Options& o, bool target) {
  cmd->add_option("--model", o.model, "Classifier JSON file");
  cmd->add_option("--instance", o.instance, "Bit string or instance JSON file");
  if (target) cmd->add_option("--target", o.target, "Target label");
  cmd->add_option("--radius", o.radius, "Search radius (default: n)");
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  Options o;
  CLI::App app("Counterfactual explanations, local structure and explanation "
               "games over Boolean classifiers.",
               "xfair");
  app.require_subcommand(1);
  app.add_flag("--verbose,-v", o.verbose, "Human summary on stderr");

  CLI::App* eval = app.add_subcommand("eval", "Label an instance; optionally evaluate a formula");
  AddQueryFlags(eval, o, false);
  eval->add_option("--formula", o.formula, "Formula, or 'A => B' counterfactual");

  CLI::App* explain = app.add_subcommand("explain", "Minimal counterfactuals and the boundary");
  AddQueryFlags(explain, o, true);
  explain->add_flag("--complete", o.complete, "Also list every true counterfactual");

  CLI::App* abduce = app.add_subcommand("abduce", "Subset-minimal abductive explanation");
  AddQueryFlags(abduce, o, false);

  CLI::App* audit = app.add_subcommand("audit", "Biased dependency and definability per factor");
  AddQueryFlags(audit, o, false);
  audit->add_option("--factors", o.factors, "Factor list JSON file");

  CLI::App* flip = app.add_subcommand("flip-degree", "Flip degree and shape");
  AddQueryFlags(flip, o, true);

  CLI::App* structure = app.add_subcommand("structure", "Region convexity report, or --sweep");
  AddQueryFlags(structure, o, true);
  structure->add_option("--mode", o.mode, "radius or component");
  structure->add_option("--sweep", o.sweep, "Sweep every Boolean function on n features");

  CLI::App* fair = app.add_subcommand("fair-set", "Fair and adequate transformation set");
  AddQueryFlags(fair, o, true);
  fair->add_option("--conundrum", o.conundrum, "Conundrum JSON file");
  fair->add_option("--factors", o.factors, "Factor list JSON file");

  CLI::App* sim = app.add_subcommand("game-simulate", "Play simulated explanation games");
  AddQueryFlags(sim, o, true);
  sim->add_option("--conundrum", o.conundrum, "Conundrum JSON file");
  sim->add_option("--factors", o.factors, "Factor list JSON file");
  sim->add_option("--config", o.config, "Game config JSON file");
  sim->add_option("--scenario", o.scenario, "Built-in scenario name");
  sim->add_option("--variant", o.variant, "restriction, forcing or challenge");
  sim->add_option("--policy", o.policy,
                  "exhaustive, directed_local_search or conundrum_challenger");
  sim->add_option("--adversary", o.adversary, "adversarial or cooperative");
  sim->add_option("--seed", o.seed, "Seed (default 0)");
  sim->add_option("--games", o.games, "Games to play, seeds seed..seed+games-1");
  sim->add_option("--jobs", o.jobs, "Parallel games");
  sim->add_option("--max-moves", o.max_moves, "Abandon after this many moves");
  sim->add_option("--scaling", o.scaling, "Scaling family sweep, K or K1-K2");
  sim->add_flag("--csv", o.csv, "CSV output for --scaling");
  sim->add_option("--flip-search", o.flip_search,
                  "Run flip local search for this many targets instead");

  CLI::App* serve = app.add_subcommand("serve", "Run the HTTP game service");
  serve->add_option("--host", o.host, "Bind address");
  serve->add_option("--port", o.port, "Port (default: XFAIR_PORT or 8080)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }
  if (o.jobs < 1) return Report(Usage("--jobs must be >= 1"), out, err);

  const auto start = std::chrono::steady_clock::now();
  absl::StatusOr<Json> result = absl::UnknownError("no command");
  if (structure->parsed() && o.sweep) {
    absl::Status s = Sweep(o, out, err);
    return s.ok() ? 0 : Report(s, out, err);
  }
  if (sim->parsed() && !o.scaling.empty()) {
    absl::Status s = Scaling(o, out, err);
    return s.ok() ? 0 : Report(s, out, err);
  }
  if (serve->parsed()) {
    const int port = o.port.value_or(ServicePortFromEnv());
    if (o.verbose) err << "listening on " << o.host << ":" << port << "\n";
    absl::Status s = Serve(o.host, port);
    return s.ok() ? 0 : Report(s, out, err);
  }
  if (eval->parsed()) result = Eval(o, err);
  if (explain->parsed()) result = Explain(o, err);
  if (abduce->parsed()) result = Abduce(o, err);
  if (audit->parsed()) result = Audit(o, err);
  if (flip->parsed()) result = FlipDegreeCommand(o, err);
  if (structure->parsed()) result = StructureCommand(o, err);
  if (fair->parsed()) result = FairSet(o, err);
  if (sim->parsed()) result = GameSimulate(o, err);
  if (!result.ok()) return Report(result.status(), out, err);
  out << result->dump(2) << "\n";
  if (o.verbose) {
    err << "done in "
        << std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
               .count()
        << " s\n";
  }
  return 0;
}

}  // namespace xfair
