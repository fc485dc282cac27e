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

#include "xfair/formula.h"

#include <algorithm>
#include <cctype>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace xfair {

Formula Formula::Feature(int index) { return Formula(Kind::kFeature, index, {}); }

Formula Formula::Label(LabelId label) { return Formula(Kind::kLabel, label, {}); }

Formula Formula::Not(Formula operand) {
  std::vector<Formula> children;
  children.push_back(std::move(operand));
  return Formula(Kind::kNot, 0, std::move(children));
}

Formula Formula::And(std::vector<Formula> operands) {
  if (operands.size() == 1) return std::move(operands.front());
  return Formula(Kind::kAnd, 0, std::move(operands));
}

Formula Formula::Or(std::vector<Formula> operands) {
  if (operands.size() == 1) return std::move(operands.front());
  return Formula(Kind::kOr, 0, std::move(operands));
}

Formula Formula::Literal(int index, bool positive) {
  return positive ? Feature(index) : Not(Feature(index));
}

Formula Formula::Conjunction(const LiteralSet& set) {
  std::vector<Formula> literals;
  for (const auto& [feature, value] : set.Literals()) {
    literals.push_back(Literal(feature, value));
  }
  return And(std::move(literals));
}

bool Formula::MentionsLabels() const {
  if (kind_ == Kind::kLabel) return true;
  return std::any_of(children_.begin(), children_.end(),
                     [](const Formula& f) { return f.MentionsLabels(); });
}

int Formula::NodeCount() const {
  int count = 1;
  for (const Formula& child : children_) count += child.NodeCount();
  return count;
}

bool Formula::Holds(const World& w, const Classifier& c) const {
  switch (kind_) {
    case Kind::kFeature:
      return w.Get(atom_);
    case Kind::kLabel:
      return c.Predict(w) == atom_;
    case Kind::kNot:
      return !children_[0].Holds(w, c);
    case Kind::kAnd:
      return std::all_of(children_.begin(), children_.end(),
                         [&](const Formula& f) { return f.Holds(w, c); });
    case Kind::kOr:
      return std::any_of(children_.begin(), children_.end(),
                         [&](const Formula& f) { return f.Holds(w, c); });
  }
  return false;
}

absl::Status Formula::Validate(const Classifier& c) const {
  if (kind_ == Kind::kFeature && (atom_ < 0 || atom_ >= c.width())) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown feature atom #", atom_));
  }
  if (kind_ == Kind::kLabel && (atom_ < 0 || atom_ >= c.num_labels())) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown prediction atom #", atom_));
  }
  if ((kind_ == Kind::kAnd || kind_ == Kind::kOr) && children_.empty()) {
    return absl::InvalidArgumentError("empty connective");
  }
  for (const Formula& child : children_) {
    if (absl::Status s = child.Validate(c); !s.ok()) return s;
  }
  return absl::OkStatus();
}

std::string Formula::ToString(const Classifier& c) const {
  auto wrapped = [&c](const Formula& f, Kind parent) {
    std::string text = f.ToString(c);
    const bool compound = f.kind() == Kind::kAnd || f.kind() == Kind::kOr;
    if (compound && (parent == Kind::kNot || f.kind() != parent)) {
      return absl::StrCat("(", text, ")");
    }
    return text;
  };
  switch (kind_) {
    case Kind::kFeature:
      return c.space().name(atom_);
    case Kind::kLabel:
      return c.label_name(atom_);
    case Kind::kNot:
      return absl::StrCat("!", wrapped(children_[0], kind_));
    case Kind::kAnd:
    case Kind::kOr: {
      std::vector<std::string> parts;
      for (const Formula& child : children_) parts.push_back(wrapped(child, kind_));
      return absl::StrJoin(parts, kind_ == Kind::kAnd ? " & " : " | ");
    }
  }
  return "";
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Classifier& c) : text_(text), c_(c) {}

  absl::StatusOr<Formula> ParseAll() {
    absl::StatusOr<Formula> f = ParseOr();
    if (!f.ok()) return f;
    SkipSpace();
    if (pos_ != text_.size()) return Error("unexpected trailing input");
    return f;
  }

 private:
  absl::StatusOr<Formula> ParseOr() {
    std::vector<Formula> parts;
    do {
      absl::StatusOr<Formula> part = ParseAnd();
      if (!part.ok()) return part;
      parts.push_back(*std::move(part));
    } while (Accept('|'));
    return Formula::Or(std::move(parts));
  }

  absl::StatusOr<Formula> ParseAnd() {
    std::vector<Formula> parts;
    do {
      absl::StatusOr<Formula> part = ParseUnary();
      if (!part.ok()) return part;
      parts.push_back(*std::move(part));
    } while (Accept('&'));
    return Formula::And(std::move(parts));
  }

  absl::StatusOr<Formula> ParseUnary() {
    if (Accept('!')) {
      absl::StatusOr<Formula> operand = ParseUnary();
      if (!operand.ok()) return operand;
      return Formula::Not(*std::move(operand));
    }
    if (Accept('(')) {
      absl::StatusOr<Formula> inner = ParseOr();
      if (!inner.ok()) return inner;
      if (!Accept(')')) return Error("expected ')'");
      return inner;
    }
    return ParseAtom();
  }

  absl::StatusOr<Formula> ParseAtom() {
    SkipSpace();
    const size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_' || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ == start) return Error("expected an atom");
    const std::string_view name = text_.substr(start, pos_ - start);
    const std::optional<int> feature = c_.space().IndexOf(name);
    const std::optional<LabelId> label = c_.FindLabel(name);
    if (feature && label) {
      return absl::InvalidArgumentError(
          absl::StrCat("atom '", std::string(name), "' names both a feature and a label"));
    }
    if (feature) return Formula::Feature(*feature);
    if (label) return Formula::Label(*label);
    return absl::InvalidArgumentError(absl::StrCat("unknown atom '", std::string(name), "'"));
  }

  bool Accept(char ch) {
    SkipSpace();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  absl::Status Error(std::string_view what) const {
    return absl::InvalidArgumentError(
        absl::StrCat("formula parse error at offset ", pos_, ": ", std::string(what)));
  }

  std::string_view text_;
  const Classifier& c_;
  size_t pos_ = 0;
};

}  // namespace

absl::StatusOr<Formula> ParseFormula(std::string_view text, const Classifier& c) {
  return Parser(text, c).ParseAll();
}

}  // namespace xfair
