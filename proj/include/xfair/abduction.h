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

// Entailment over a classifier's graph and deletion-based extraction of
// subset-minimal abductive explanations.

#ifndef XFAIR_ABDUCTION_H_
#define XFAIR_ABDUCTION_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "xfair/feature_model.h"
#include "xfair/transforms.h"

namespace xfair {

enum class OracleBackend {
  // Checks every extension of the literal set.
  kExhaustive,
  // Walks only the parts of the representation the literal set leaves open.
  kRulePrune,
};

// Decides whether a literal set forces a label. Not thread-safe: the call
// counter is mutable. Use one oracle per worker.
class EntailmentOracle {
 public:
  explicit EntailmentOracle(OracleBackend backend = OracleBackend::kExhaustive)
      : backend_(backend) {}

  OracleBackend backend() const { return backend_; }

  // True iff every world extending `literals` is labeled `target`. Counts one
  // call per query.
  absl::StatusOr<bool> Entails(const Classifier& c, const LiteralSet& literals,
                               LabelId target);

  int64_t calls() const { return calls_; }
  void ResetCalls() { calls_ = 0; }

 private:
  OracleBackend backend_;
  int64_t calls_ = 0;
};

// Drops literals of `start` one at a time, highest feature index first,
// keeping a deletion whenever entailment of `target` survives. Literals in
// `keep` are never dropped. `start` must entail `target`; this is verified
// with one extra oracle call.
absl::StatusOr<LiteralSet> MinimizeLiterals(EntailmentOracle& oracle,
                                            const Classifier& c,
                                            const LiteralSet& start,
                                            LabelId target,
                                            const LiteralSet& keep);

// A subset-minimal set of w's literals entailing w's label. Uses at most
// n oracle calls.
absl::StatusOr<LiteralSet> AbductiveExplanation(EntailmentOracle& oracle,
                                                const Classifier& c,
                                                const World& w);

// Minimizes the literals of t(focal) toward `target`. Errors unless t is
// appropriate.
absl::StatusOr<LiteralSet> CfToValidExplanation(EntailmentOracle& oracle,
                                                const Classifier& c,
                                                const Transformation& t,
                                                const World& focal,
                                                LabelId target);

}  // namespace xfair

#endif  // XFAIR_ABDUCTION_H_
