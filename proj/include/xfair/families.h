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

// Canned classifiers and seeded generators for tests, sweeps and scenarios.

#ifndef XFAIR_FAMILIES_H_
#define XFAIR_FAMILIES_H_

#include <string>
#include <vector>

#include "xfair/fairness.h"
#include "xfair/feature_model.h"
#include "xfair/rng.h"

namespace xfair {

// Features income_high, privileged, fraud, savings; labels deny, grant;
// grant iff !fraud & (income_high | privileged).
Classifier BankLoan4();

// privileged := true.
PrejudicialFactor PrivilegeFactor(const Classifier& c);

// Features x0..x{n-1}.
FeatureSpace GenericSpace(int n);

// Every function {0,1}^n -> {deny, grant}, indexed by its truth table read as
// a binary number with world 0 in the lowest bit. n <= 4.
std::vector<Classifier> AllBooleanFunctions(int n);

Classifier RandomTruthTable(int n, Rng& rng, int num_labels = 2);
Classifier RandomDecisionTree(int n, Rng& rng, int max_depth);
Classifier RandomRules(int n, Rng& rng, int num_terms);

// A focal point, target, conundrum and factors drawn for `c`.
struct FairnessInstance {
  World focal;
  LabelId target = 0;
  int radius = 0;
  ConundrumSpec spec;
  std::vector<PrejudicialFactor> factors;
};

// Draws a focal point with a different label in the image, a CI or CM
// conundrum and between min_factors and max_factors single-dimension factors.
// Returns false when the classifier is constant.
bool RandomFairnessInstance(const Classifier& c, Rng& rng, int min_factors,
                            int max_factors, FairnessInstance& out);

// The scaling family with k irrelevant features: income_high, privileged,
// fraud, noise_1..noise_k; grant iff !fraud & (income_high | privileged);
// focal all zero; CI attending to income_high; factor privileged := true.
struct ScalingInstance {
  Classifier classifier;
  FairnessInstance instance;
};

ScalingInstance ScalingFamily(int k);

}  // namespace xfair

#endif  // XFAIR_FAMILIES_H_
