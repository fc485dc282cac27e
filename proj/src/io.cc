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

#include "xfair/io.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "xfair/families.h"

namespace xfair {
namespace {

absl::Status Invalid(std::string_view what) {
  return absl::InvalidArgumentError(std::string(what));
}

absl::StatusOr<std::string> StringField(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || !doc[key].is_string()) {
    return Invalid(absl::StrCat("expected string field '", key, "'"));
  }
  return doc[key].get<std::string>();
}

absl::StatusOr<int> FeatureIndex(const FeatureSpace& space,
                                 const std::string& name) {
  std::optional<int> i = space.IndexOf(name);
  if (!i) return Invalid(absl::StrCat("unknown feature '", name, "'"));
  return *i;
}

absl::StatusOr<LabelId> LabelIndex(const std::vector<std::string>& labels,
                                   const std::string& name) {
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == name) return static_cast<LabelId>(i);
  }
  return Invalid(absl::StrCat("unknown label '", name, "'"));
}

// {"name": bool, ...} as (feature, value) pairs.
absl::StatusOr<std::vector<std::pair<int, bool>>> NamedValues(
    const Json& doc, const FeatureSpace& space) {
  if (!doc.is_object()) return Invalid("expected an object of feature values");
  std::vector<std::pair<int, bool>> out;
  for (const auto& [name, value] : doc.items()) {
    absl::StatusOr<int> i = FeatureIndex(space, name);
    if (!i.ok()) return i.status();
    if (!value.is_boolean()) {
      return Invalid(absl::StrCat("value of '", name, "' must be true or false"));
    }
    out.push_back({*i, value.get<bool>()});
  }
  return out;
}

Json NamedValuesToJson(const LiteralSet& l, const FeatureSpace& space) {
  Json out = Json::object();
  for (auto [f, v] : l.Literals()) out[space.name(f)] = v;
  return out;
}

absl::StatusOr<LiteralSet> Term(const Json& doc, const FeatureSpace& space) {
  if (!doc.is_array()) return Invalid("rule term must be a list of literals");
  LiteralSet term(space.size());
  for (const Json& lit : doc) {
    if (!lit.is_string()) return Invalid("literal must be a string");
    std::string name = lit.get<std::string>();
    const bool positive = name.empty() || name[0] != '!';
    if (!positive) name = name.substr(1);
    absl::StatusOr<int> i = FeatureIndex(space, name);
    if (!i.ok()) return i.status();
    if (term.Has(*i) && term.Value(*i) != positive) {
      return Invalid(absl::StrCat("term mentions '", name, "' both ways"));
    }
    term = term.With(*i, positive);
  }
  return term;
}

absl::StatusOr<int> TreeNode(const Json& doc, const FeatureSpace& space,
                             const std::vector<std::string>& labels,
                             DecisionTree& tree, int depth) {
  if (depth > 256) return Invalid("tree is too deep");
  if (!doc.is_object()) return Invalid("tree node must be an object");
  const int id = static_cast<int>(tree.nodes.size());
  tree.nodes.emplace_back();
  if (doc.contains("label")) {
    absl::StatusOr<std::string> name = StringField(doc, "label");
    if (!name.ok()) return name.status();
    absl::StatusOr<LabelId> label = LabelIndex(labels, *name);
    if (!label.ok()) return label.status();
    tree.nodes[id].label = *label;
    return id;
  }
  absl::StatusOr<std::string> test = StringField(doc, "test");
  if (!test.ok()) return test.status();
  absl::StatusOr<int> feature = FeatureIndex(space, *test);
  if (!feature.ok()) return feature.status();
  if (!doc.contains("if_true") || !doc.contains("if_false")) {
    return Invalid("tree test needs if_true and if_false");
  }
  absl::StatusOr<int> t = TreeNode(doc["if_true"], space, labels, tree, depth + 1);
  if (!t.ok()) return t.status();
  absl::StatusOr<int> f = TreeNode(doc["if_false"], space, labels, tree, depth + 1);
  if (!f.ok()) return f.status();
  tree.nodes[id].feature = *feature;
  tree.nodes[id].if_true = *t;
  tree.nodes[id].if_false = *f;
  return id;
}

Json TreeNodeToJson(const DecisionTree& tree, int id, const Classifier& c) {
  const DecisionTree::Node& node = tree.nodes[id];
  if (node.feature < 0) return Json{{"label", c.label_name(node.label)}};
  Json out;
  out["test"] = c.space().name(node.feature);
  out["if_true"] = TreeNodeToJson(tree, node.if_true, c);
  out["if_false"] = TreeNodeToJson(tree, node.if_false, c);
  return out;
}

}  // namespace

absl::StatusOr<Json> ParseJson(std::string_view text) {
  Json doc = Json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded()) return Invalid("malformed JSON");
  return doc;
}

absl::StatusOr<Json> ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  absl::StatusOr<Json> doc = ParseJson(buffer.str());
  if (!doc.ok()) return Invalid(absl::StrCat(path, ": malformed JSON"));
  return doc;
}

absl::StatusOr<Classifier> ClassifierFromJson(const Json& doc) {
  if (!doc.is_object()) return Invalid("classifier must be an object");
  if (!doc.contains("features") || !doc["features"].is_array()) {
    return Invalid("classifier needs a 'features' list");
  }
  if (!doc.contains("labels") || !doc["labels"].is_array()) {
    return Invalid("classifier needs a 'labels' list");
  }
  std::vector<std::string> names;
  for (const Json& f : doc["features"]) {
    if (!f.is_string()) return Invalid("feature names must be strings");
    names.push_back(f.get<std::string>());
  }
  std::vector<std::string> labels;
  for (const Json& l : doc["labels"]) {
    if (!l.is_string()) return Invalid("label names must be strings");
    labels.push_back(l.get<std::string>());
  }
  absl::StatusOr<FeatureSpace> space = FeatureSpace::Create(std::move(names));
  if (!space.ok()) return space.status();
  if (!doc.contains("repr") || !doc["repr"].is_object()) {
    return Invalid("classifier needs a 'repr' object");
  }
  const Json& repr = doc["repr"];
  absl::StatusOr<std::string> type = StringField(repr, "type");
  if (!type.ok()) return type.status();
  Classifier::Repr out;
  if (*type == "rules") {
    LabelRules rules;
    absl::StatusOr<std::string> fallback = StringField(repr, "default");
    if (!fallback.ok()) return fallback.status();
    absl::StatusOr<LabelId> d = LabelIndex(labels, *fallback);
    if (!d.ok()) return d.status();
    rules.default_label = *d;
    if (!repr.contains("rules") || !repr["rules"].is_array()) {
      return Invalid("rules repr needs a 'rules' list");
    }
    for (const Json& rule : repr["rules"]) {
      absl::StatusOr<std::string> name = StringField(rule, "label");
      if (!name.ok()) return name.status();
      absl::StatusOr<LabelId> label = LabelIndex(labels, *name);
      if (!label.ok()) return label.status();
      if (!rule.contains("terms") || !rule["terms"].is_array()) {
        return Invalid("rule needs a 'terms' list");
      }
      LabelRules::Rule r{*label, {}};
      for (const Json& term : rule["terms"]) {
        absl::StatusOr<LiteralSet> t = Term(term, *space);
        if (!t.ok()) return t.status();
        r.terms.push_back(*t);
      }
      rules.rules.push_back(std::move(r));
    }
    out = std::move(rules);
  } else if (*type == "truth_table") {
    TruthTable table;
    if (!repr.contains("entries") || !repr["entries"].is_array()) {
      return Invalid("truth_table repr needs an 'entries' list");
    }
    for (const Json& e : repr["entries"]) {
      if (!e.is_string()) return Invalid("truth table entries must be label names");
      absl::StatusOr<LabelId> label = LabelIndex(labels, e.get<std::string>());
      if (!label.ok()) return label.status();
      table.entries.push_back(*label);
    }
    out = std::move(table);
  } else if (*type == "tree") {
    if (!repr.contains("node")) return Invalid("tree repr needs a 'node'");
    DecisionTree tree;
    absl::StatusOr<int> root = TreeNode(repr["node"], *space, labels, tree, 0);
    if (!root.ok()) return root.status();
    tree.root = *root;
    out = std::move(tree);
  } else {
    return Invalid(absl::StrCat("unknown repr type '", *type, "'"));
  }
  return Classifier::Create(*std::move(space), std::move(labels), std::move(out));
}

Json ClassifierToJson(const Classifier& c) {
  Json out;
  out["features"] = c.space().names();
  out["labels"] = c.labels();
  Json repr;
  if (const auto* rules = std::get_if<LabelRules>(&c.repr())) {
    repr["type"] = "rules";
    Json list = Json::array();
    for (const LabelRules::Rule& r : rules->rules) {
      Json terms = Json::array();
      for (const LiteralSet& t : r.terms) {
        Json lits = Json::array();
        for (auto [f, v] : t.Literals()) {
          lits.push_back(absl::StrCat(v ? "" : "!", c.space().name(f)));
        }
        terms.push_back(std::move(lits));
      }
      list.push_back(Json{{"label", c.label_name(r.label)}, {"terms", terms}});
    }
    repr["rules"] = std::move(list);
    repr["default"] = c.label_name(rules->default_label);
  } else if (const auto* table = std::get_if<TruthTable>(&c.repr())) {
    repr["type"] = "truth_table";
    Json entries = Json::array();
    for (LabelId e : table->entries) entries.push_back(c.label_name(e));
    repr["entries"] = std::move(entries);
  } else {
    const auto& tree = std::get<DecisionTree>(c.repr());
    repr["type"] = "tree";
    repr["node"] = TreeNodeToJson(tree, tree.root, c);
  }
  out["repr"] = std::move(repr);
  return out;
}

absl::StatusOr<World> WorldFromJson(const Json& doc, const FeatureSpace& space) {
  if (doc.is_object() && doc.contains("bits")) {
    absl::StatusOr<std::string> bits = StringField(doc, "bits");
    if (!bits.ok()) return bits.status();
    absl::StatusOr<World> w = World::FromString(*bits);
    if (!w.ok()) return w.status();
    if (w->width() != space.size()) {
      return Invalid(absl::StrCat("instance has ", w->width(), " bits; the model has ",
                                  space.size(), " features"));
    }
    return w;
  }
  if (doc.is_object() && doc.contains("values")) {
    absl::StatusOr<std::vector<std::pair<int, bool>>> values =
        NamedValues(doc["values"], space);
    if (!values.ok()) return values.status();
    absl::StatusOr<LiteralSet> l = LiteralSet::Create(space.size(), *values);
    if (!l.ok()) return l.status();
    if (l->size() != space.size()) {
      return Invalid("instance 'values' must give every feature");
    }
    return World(space.size(), l->values());
  }
  return Invalid("instance needs 'bits' or 'values'");
}

absl::StatusOr<LabelId> LabelFromJson(const Json& doc, const Classifier& c) {
  if (!doc.is_string()) return Invalid("label must be a string");
  return LabelIndex(c.labels(), doc.get<std::string>());
}

absl::StatusOr<Transformation> TransformationFromJson(const Json& doc,
                                                      const FeatureSpace& space) {
  if (!doc.is_object() || !doc.contains("set")) {
    return Invalid("transformation needs a 'set' object");
  }
  absl::StatusOr<std::vector<std::pair<int, bool>>> values =
      NamedValues(doc["set"], space);
  if (!values.ok()) return values.status();
  return Transformation::Create(space.size(), *values);
}

Json TransformationToJson(const Transformation& t, const FeatureSpace& space) {
  return Json{{"set", NamedValuesToJson(t.targets(), space)}};
}

absl::StatusOr<LiteralSet> LiteralSetFromJson(const Json& doc,
                                              const FeatureSpace& space) {
  if (!doc.is_object() || !doc.contains("literals")) {
    return Invalid("literal set needs a 'literals' object");
  }
  absl::StatusOr<std::vector<std::pair<int, bool>>> values =
      NamedValues(doc["literals"], space);
  if (!values.ok()) return values.status();
  return LiteralSet::Create(space.size(), *values);
}

Json LiteralSetToJson(const LiteralSet& l, const FeatureSpace& space) {
  return Json{{"literals", NamedValuesToJson(l, space)}};
}

absl::StatusOr<uint64_t> IndicesFromJson(const Json& doc,
                                         const FeatureSpace& space) {
  if (!doc.is_array()) return Invalid("index set must be a list of feature names");
  uint64_t mask = 0;
  for (const Json& name : doc) {
    if (!name.is_string()) return Invalid("index set must be a list of feature names");
    absl::StatusOr<int> i = FeatureIndex(space, name.get<std::string>());
    if (!i.ok()) return i.status();
    mask |= FeatureBit(space.size(), *i);
  }
  return mask;
}

Json IndicesToJson(uint64_t mask, const FeatureSpace& space) {
  Json out = Json::array();
  for (int i : MaskIndices(space.size(), mask)) out.push_back(space.name(i));
  return out;
}

absl::StatusOr<ConundrumConfig> ConundrumConfigFromJson(
    const Json& doc, const FeatureSpace& space) {
  if (!doc.is_object()) return Invalid("conundrum config must be an object");
  ConundrumConfig out;
  const int n = space.size();
  if (doc.contains("conundrum")) {
    const Json& c = doc["conundrum"];
    absl::StatusOr<std::string> kind = StringField(c, "kind");
    if (!kind.ok()) return kind.status();
    if (*kind == "CI") {
      absl::StatusOr<uint64_t> attended =
          IndicesFromJson(c.contains("attended") ? c["attended"] : Json(), space);
      if (!attended.ok()) return attended.status();
      absl::StatusOr<ConundrumSpec> spec = ConundrumSpec::Incompleteness(n, *attended);
      if (!spec.ok()) return spec.status();
      out.spec = *spec;
    } else if (*kind == "CM") {
      absl::StatusOr<uint64_t> mistaken =
          IndicesFromJson(c.contains("mistaken") ? c["mistaken"] : Json(), space);
      if (!mistaken.ok()) return mistaken.status();
      LiteralSet believed(n);
      if (c.contains("believed")) {
        absl::StatusOr<std::vector<std::pair<int, bool>>> values =
            NamedValues(c["believed"], space);
        if (!values.ok()) return values.status();
        absl::StatusOr<LiteralSet> l = LiteralSet::Create(n, *values);
        if (!l.ok()) return l.status();
        believed = *l;
      }
      absl::StatusOr<ConundrumSpec> spec =
          ConundrumSpec::Mistake(n, *mistaken, believed);
      if (!spec.ok()) return spec.status();
      out.spec = *spec;
    } else {
      return Invalid(absl::StrCat("unknown conundrum kind '", *kind, "' (CI or CM)"));
    }
    out.has_spec = true;
  }
  if (doc.contains("factors")) {
    if (!doc["factors"].is_array()) return Invalid("'factors' must be a list");
    for (const Json& f : doc["factors"]) {
      absl::StatusOr<std::string> name = StringField(f, "name");
      if (!name.ok()) return name.status();
      absl::StatusOr<Transformation> map = TransformationFromJson(f, space);
      if (!map.ok()) return map.status();
      absl::StatusOr<PrejudicialFactor> p = PrejudicialFactor::Create(*name, *map);
      if (!p.ok()) return p.status();
      out.factors.push_back(*std::move(p));
    }
  }
  return out;
}

Json ConundrumToJson(const ConundrumSpec& spec, const FeatureSpace& space) {
  Json out;
  out["kind"] = spec.Name();
  if (spec.kind() == ConundrumKind::kCI) {
    out["attended"] = IndicesToJson(spec.attended(), space);
  } else {
    out["mistaken"] = IndicesToJson(spec.mistaken(), space);
    out["believed"] = NamedValuesToJson(spec.believed(), space);
  }
  return out;
}

Json FactorToJson(const PrejudicialFactor& p, const FeatureSpace& space) {
  return Json{{"name", p.name()},
              {"set", NamedValuesToJson(p.map().targets(), space)}};
}

absl::StatusOr<GameConfig> GameConfigFromJson(const Json& doc) {
  if (!doc.is_object()) return Invalid("game config must be an object");
  if (doc.contains("scenario")) {
    absl::StatusOr<std::string> name = StringField(doc, "scenario");
    if (!name.ok()) return name.status();
    for (Scenario& s : BuiltinScenarios()) {
      if (s.name == *name) return std::move(s.config);
    }
    return Invalid(absl::StrCat("unknown scenario '", *name, "'"));
  }
  if (!doc.contains("model")) return Invalid("game config needs 'model'");
  GameConfig config;
  absl::StatusOr<Classifier> c = ClassifierFromJson(doc["model"]);
  if (!c.ok()) return c.status();
  config.classifier = *std::move(c);
  const FeatureSpace& space = config.classifier.space();
  if (!doc.contains("instance")) return Invalid("game config needs 'instance'");
  absl::StatusOr<World> focal = WorldFromJson(doc["instance"], space);
  if (!focal.ok()) return focal.status();
  config.focal = *focal;
  if (!doc.contains("target")) return Invalid("game config needs 'target'");
  absl::StatusOr<LabelId> target = LabelFromJson(doc["target"], config.classifier);
  if (!target.ok()) return target.status();
  config.target = *target;
  config.radius = space.size();
  if (doc.contains("radius")) {
    if (!doc["radius"].is_number_integer()) return Invalid("'radius' must be an integer");
    config.radius = doc["radius"].get<int>();
  }
  if (doc.contains("variant")) {
    absl::StatusOr<std::string> v = StringField(doc, "variant");
    if (!v.ok()) return v.status();
    absl::StatusOr<Variant> variant = ParseVariant(*v);
    if (!variant.ok()) return variant.status();
    config.variant = *variant;
  }
  if (doc.contains("policy")) {
    absl::StatusOr<std::string> p = StringField(doc, "policy");
    if (!p.ok()) return p.status();
    absl::StatusOr<AdversaryPolicy> policy = ParsePolicy(*p);
    if (!policy.ok()) return policy.status();
    config.policy = *policy;
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) return Invalid("'seed' must be >= 0");
    config.seed = doc["seed"].get<uint64_t>();
  }
  absl::StatusOr<ConundrumConfig> cc = ConundrumConfigFromJson(doc, space);
  if (!cc.ok()) return cc.status();
  if (!cc->has_spec) return Invalid("game config needs 'conundrum'");
  config.conundrum = cc->spec;
  config.factors = cc->factors;
  return config;
}

absl::StatusOr<Move> MoveFromJson(const Json& doc, const FeatureSpace& space) {
  absl::StatusOr<std::string> name = StringField(doc, "kind");
  if (!name.ok()) return name.status();
  absl::StatusOr<MoveKind> kind = ParseMoveKind(*name);
  if (!kind.ok()) return kind.status();
  switch (*kind) {
    case MoveKind::kAccept:
      return Move::Accept();
    case MoveKind::kNRequest:
      return Move::NRequest();
    case MoveKind::kPRequest: {
      if (!doc.contains("indices")) return Invalid("P_REQUEST needs 'indices'");
      absl::StatusOr<uint64_t> mask = IndicesFromJson(doc["indices"], space);
      if (!mask.ok()) return mask.status();
      return Move::PRequest(*mask);
    }
    case MoveKind::kChallenge: {
      absl::StatusOr<LiteralSet> l = LiteralSetFromJson(doc, space);
      if (!l.ok()) return l.status();
      return Move::Challenge(*l);
    }
  }
  return Invalid("unknown move");
}

Json MoveToJson(const Move& m, const FeatureSpace& space) {
  Json out;
  out["kind"] = MoveKindName(m.kind);
  if (m.kind == MoveKind::kPRequest) out["indices"] = IndicesToJson(m.indices, space);
  if (m.kind == MoveKind::kChallenge) {
    out["literals"] = NamedValuesToJson(m.literals, space);
  }
  return out;
}

Json ReplyToJson(const Reply& r, const Classifier& c) {
  Json out;
  out["kind"] = ReplyKindName(r.kind);
  if (r.delta) out["delta"] = TransformationToJson(*r.delta, c.space());
  if (r.label >= 0) out["label"] = c.label_name(r.label);
  if (r.literals) out["literals"] = NamedValuesToJson(*r.literals, c.space());
  return out;
}

Json CountersToJson(const Counters& c) {
  return Json{{"explainee_moves", c.explainee_moves},
              {"adversary_oracle_calls", c.adversary_oracle_calls}};
}

Json TranscriptToJson(const std::vector<TranscriptEntry>& transcript,
                      const Classifier& c) {
  Json out = Json::array();
  for (const TranscriptEntry& e : transcript) {
    out.push_back(Json{{"move", MoveToJson(e.move, c.space())},
                       {"reply", ReplyToJson(e.reply, c)},
                       {"counters", CountersToJson(e.counters)}});
  }
  return out;
}

Json PublicStateToJson(const Game& game) {
  const GameConfig& config = game.config();
  const Classifier& c = config.classifier;
  Json out;
  out["status"] = StatusName(game.status());
  Json legal = Json::array();
  for (MoveKind k : game.LegalMoves()) legal.push_back(MoveKindName(k));
  out["legal_moves"] = std::move(legal);
  out["variant"] = VariantName(config.variant);
  out["features"] = c.space().names();
  out["labels"] = c.labels();
  out["focal"] = config.focal.ToString();
  out["target"] = c.label_name(config.target);
  out["radius"] = config.radius;
  out["conundrum"] = ConundrumToJson(config.conundrum, c.space());
  Json factors = Json::array();
  for (const PrejudicialFactor& p : config.factors) {
    factors.push_back(FactorToJson(p, c.space()));
  }
  out["factors"] = std::move(factors);
  Json proposals = Json::array();
  for (const Proposal& p : game.proposals()) {
    proposals.push_back(Json{{"delta", TransformationToJson(p.delta, c.space())},
                             {"label", c.label_name(p.label)},
                             {"accepted", p.accepted}});
  }
  out["proposals"] = std::move(proposals);
  Json resolved = Json::object();
  const std::vector<bool> r = game.Resolved();
  for (size_t j = 0; j < game.constraints().size(); ++j) {
    resolved[game.constraints()[j].name] = static_cast<bool>(r[j]);
  }
  out["resolved"] = std::move(resolved);
  out["transcript"] = TranscriptToJson(game.transcript(), c);
  out["counters"] = CountersToJson(game.counters());
  return out;
}

Json ConstraintVerdictToJson(const ConstraintVerdict& v,
                             const FeatureSpace& space) {
  Json out;
  out["constraint"] = v.constraint;
  out["satisfied"] = v.satisfied;
  out["witness"] = v.witness ? TransformationToJson(*v.witness, space) : Json();
  if (!v.diagnostic.empty()) out["diagnostic"] = v.diagnostic;
  return out;
}

Json HarnessRowToJson(const HarnessRow& row) {
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(row.classifier_hash));
  Json out;
  out["classifier_hash"] = hash;
  out["focal"] = row.focal.ToString();
  out["target"] = row.target;
  out["flip_degree"] = row.flip_degree;
  out["interval"] = row.interval;
  out["star"] = row.star;
  out["monotone_geodesic"] = row.monotone_geodesic;
  if (!row.counterexamples.empty()) {
    Json ce = Json::object();
    for (const auto& [notion, worlds] : row.counterexamples) {
      Json list = Json::array();
      for (const World& w : worlds) list.push_back(w.ToString());
      ce[notion] = std::move(list);
    }
    out["counterexample"] = std::move(ce);
  }
  return out;
}

Json AgreementMatrixToJson(const AgreementMatrix& m) {
  Json out;
  out["rows"] = m.rows;
  out["implication_violations"] = m.implication_violations;
  Json notions = Json::object();
  for (const auto& [name, counts] : m.counts) {
    notions[name] = Json{{"low_degree_convex", counts[1][1]},
                         {"low_degree_not_convex", counts[1][0]},
                         {"high_degree_convex", counts[0][1]},
                         {"high_degree_not_convex", counts[0][0]}};
  }
  out["notions"] = std::move(notions);
  return out;
}

}  // namespace xfair
