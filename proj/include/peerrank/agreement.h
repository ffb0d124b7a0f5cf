// Copyright 2026 The PeerRank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PEERRANK_AGREEMENT_H_
#define PEERRANK_AGREEMENT_H_

#include <optional>
#include <vector>

#include "peerrank/dataset.h"

namespace peerrank {

// Krippendorff's alpha with the ordinal difference function, computed from
// the coincidence matrix. Each inner vector holds the ratings of one unit;
// units with fewer than two ratings are not pairable and are ignored.
// nullopt when no unit is pairable or all pairable ratings are equal.
std::optional<double> KrippendorffOrdinal(
    const std::vector<std::vector<double>>& units);

// Papers as units, referees as coders, overall scores as values.
std::optional<double> OverallScoreAgreement(const Dataset& d);

}  // namespace peerrank

#endif  // PEERRANK_AGREEMENT_H_
