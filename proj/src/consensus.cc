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

#include "peerrank/consensus.h"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <set>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "peerrank/errors.h"
#include "peerrank/random.h"

namespace peerrank {
namespace {

using Clock = std::chrono::steady_clock;

class Deadline {
 public:
  explicit Deadline(double seconds)
      : end_(Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                std::chrono::duration<double>(seconds))) {}
  bool Passed() const { return Clock::now() >= end_; }

 private:
  Clock::time_point end_;
};

std::vector<size_t> NetWinsOrder(const ViolationMatrix& vm) {
  std::vector<size_t> order(vm.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return vm.NetWins(a) > vm.NetWins(b);
  });
  return order;
}

// Best-improvement insertion moves until no move lowers the violation count.
// Appends the count after every applied move to `descent` when non-null.
int64_t InsertionSearch(std::vector<size_t>& order, const ViolationMatrix& vm,
                        int64_t* moves, std::vector<int64_t>* descent) {
  const size_t n = order.size();
  int64_t current = CountViolations(order, vm);
  if (descent) descent->push_back(current);
  while (true) {
    int64_t best_delta = 0;
    size_t best_from = 0, best_to = 0;
    for (size_t i = 0; i < n; ++i) {
      const size_t x = order[i];
      int64_t delta = 0;
      for (size_t j = i + 1; j < n; ++j) {
        const size_t y = order[j];
        delta += vm.count(x, y) - vm.count(y, x);
        if (delta < best_delta) {
          best_delta = delta;
          best_from = i;
          best_to = j;
        }
      }
      delta = 0;
      for (size_t j = i; j-- > 0;) {
        const size_t y = order[j];
        delta += vm.count(y, x) - vm.count(x, y);
        if (delta < best_delta) {
          best_delta = delta;
          best_from = i;
          best_to = j;
        }
      }
    }
    if (best_delta >= 0) break;
    const size_t x = order[best_from];
    order.erase(order.begin() + static_cast<std::ptrdiff_t>(best_from));
    order.insert(order.begin() + static_cast<std::ptrdiff_t>(best_to), x);
    current += best_delta;
    if (moves) ++*moves;
    if (descent) descent->push_back(current);
  }
  return current;
}

ConsensusResult Finish(const std::string& method, const ViolationMatrix& vm,
                       const std::vector<size_t>& order,
                       const std::vector<std::string>& all_papers,
                       const std::string& compared_status) {
  ConsensusResult out;
  std::vector<std::string> ids;
  for (size_t i : order) ids.push_back(vm.papers()[i]);
  std::set<std::string> compared(vm.papers().begin(), vm.papers().end());
  std::set<std::string> rest;
  for (const auto& p : all_papers) {
    if (!compared.contains(p)) rest.insert(p);
  }
  out.uncompared.assign(rest.begin(), rest.end());
  std::vector<std::string> status(ids.size(), compared_status);
  for (const auto& p : out.uncompared) {
    ids.push_back(p);
    status.push_back("uncompared");
  }
  const double n = static_cast<double>(ids.size());
  std::vector<double> utility;
  for (size_t pos = 0; pos < ids.size(); ++pos) {
    utility.push_back(n - static_cast<double>(pos));
  }
  std::vector<std::string> status_by_id = status;
  out.ranking = MakeRanking(method, std::move(ids), std::move(utility));
  out.ranking.row_status = std::move(status_by_id);
  out.violations = CountViolations(order, vm);
  return out;
}

class BranchAndBound {
 public:
  BranchAndBound(const ViolationMatrix& vm, const Deadline& deadline,
                 std::vector<size_t> incumbent, int64_t incumbent_cost)
      : vm_(vm),
        deadline_(deadline),
        best_(std::move(incumbent)),
        best_cost_(incumbent_cost),
        remaining_(vm.size(), true) {}

  // Returns false if the deadline interrupted the search.
  bool Run(SearchTrace& trace) {
    int64_t pair_min = 0;
    for (size_t a = 0; a < vm_.size(); ++a) {
      for (size_t b = a + 1; b < vm_.size(); ++b) {
        pair_min += std::min(vm_.count(a, b), vm_.count(b, a));
      }
    }
    trace.root_bound = pair_min;
    trace_ = &trace;
    Expand(0, pair_min, vm_.size());
    return !interrupted_;
  }

  const std::vector<size_t>& best() const { return best_; }
  int64_t best_cost() const { return best_cost_; }

 private:
  void Expand(int64_t committed, int64_t pair_min, size_t left) {
    if (interrupted_) return;
    if (++trace_->nodes_expanded % 4096 == 0 && deadline_.Passed()) {
      interrupted_ = true;
      return;
    }
    if (left == 0) {
      if (committed < best_cost_) {
        best_cost_ = committed;
        best_ = prefix_;
        ++trace_->incumbent_updates;
      }
      return;
    }
    std::vector<std::pair<int64_t, size_t>> children;
    for (size_t x = 0; x < vm_.size(); ++x) {
      if (!remaining_[x]) continue;
      int64_t net = 0;
      for (size_t r = 0; r < vm_.size(); ++r) {
        if (remaining_[r] && r != x) net += vm_.count(x, r) - vm_.count(r, x);
      }
      children.emplace_back(-net, x);
    }
    std::sort(children.begin(), children.end());
    for (const auto& [unused, x] : children) {
      int64_t added = 0;
      int64_t released = 0;
      for (size_t r = 0; r < vm_.size(); ++r) {
        if (!remaining_[r] || r == x) continue;
        added += vm_.count(r, x);
        released += std::min(vm_.count(x, r), vm_.count(r, x));
      }
      const int64_t next_committed = committed + added;
      const int64_t next_pair_min = pair_min - released;
      if (next_committed + next_pair_min >= best_cost_) continue;
      remaining_[x] = false;
      prefix_.push_back(x);
      Expand(next_committed, next_pair_min, left - 1);
      prefix_.pop_back();
      remaining_[x] = true;
      if (interrupted_) return;
    }
  }

  const ViolationMatrix& vm_;
  const Deadline& deadline_;
  std::vector<size_t> best_;
  int64_t best_cost_;
  std::vector<bool> remaining_;
  std::vector<size_t> prefix_;
  SearchTrace* trace_ = nullptr;
  bool interrupted_ = false;
};

}  // namespace

ViolationMatrix::ViolationMatrix(const std::vector<PreferencePair>& pairs) {
  std::set<std::string> ids;
  for (const auto& p : pairs) {
    if (p.relation != Relation::kStrict) {
      throw ValidationError(
          "consensus rankers need strict pairs; filter ties first");
    }
    ids.insert(p.better);
    ids.insert(p.worse);
  }
  papers_.assign(ids.begin(), ids.end());
  std::unordered_map<std::string, size_t> index;
  for (size_t i = 0; i < papers_.size(); ++i) index[papers_[i]] = i;
  counts_.assign(papers_.size() * papers_.size(), 0);
  for (const auto& p : pairs) {
    ++counts_[index[p.better] * papers_.size() + index[p.worse]];
    ++total_;
  }
}

int64_t ViolationMatrix::NetWins(size_t a) const {
  int64_t net = 0;
  for (size_t b = 0; b < papers_.size(); ++b) net += count(a, b) - count(b, a);
  return net;
}

int64_t CountViolations(const std::vector<size_t>& order,
                        const ViolationMatrix& vm) {
  int64_t v = 0;
  for (size_t i = 0; i < order.size(); ++i) {
    for (size_t j = i + 1; j < order.size(); ++j) {
      v += vm.count(order[j], order[i]);
    }
  }
  return v;
}

int64_t CountViolations(const std::vector<std::string>& order,
                        const ViolationMatrix& vm) {
  if (order.size() != vm.size()) {
    throw ValidationError("order is not a permutation of the compared papers");
  }
  std::vector<size_t> idx;
  std::vector<bool> seen(vm.size(), false);
  for (const auto& id : order) {
    auto it = std::lower_bound(vm.papers().begin(), vm.papers().end(), id);
    if (it == vm.papers().end() || *it != id) {
      throw ValidationError("order contains unknown paper '" + id + "'");
    }
    const size_t i = static_cast<size_t>(it - vm.papers().begin());
    if (seen[i]) throw ValidationError("order repeats paper '" + id + "'");
    seen[i] = true;
    idx.push_back(i);
  }
  return CountViolations(idx, vm);
}

std::string_view SearchStatusName(SearchStatus s) {
  switch (s) {
    case SearchStatus::kOptimal:
      return "optimal";
    case SearchStatus::kLocalOptimum:
      return "local-optimum";
    case SearchStatus::kBudgetExhausted:
      return "budget-exhausted";
  }
  return "unknown";
}

void ConsensusConfig::Validate() const {
  if (!(time_budget_seconds > 0.0)) {
    throw ConfigError("time_budget_seconds must be > 0");
  }
  if (restarts < 0) throw ConfigError("restarts must be >= 0");
}

ConsensusResult RankDcon(const std::vector<PreferencePair>& pairs,
                         const std::vector<std::string>& all_papers,
                         const ConsensusConfig& cfg) {
  cfg.Validate();
  const ViolationMatrix vm(pairs);
  const Deadline deadline(cfg.time_budget_seconds);

  std::vector<size_t> start = NetWinsOrder(vm);
  SearchTrace trace;
  const int64_t start_cost = InsertionSearch(start, vm, &trace.moves, nullptr);
  // The incumbent bound is strict, so seed it one above the heuristic cost
  // and let the search rediscover an optimal order when the heuristic is one.
  BranchAndBound bnb(vm, deadline, start, start_cost + 1);
  const bool complete = bnb.Run(trace);

  ConsensusResult out =
      Finish("dcon", vm, bnb.best(), all_papers,
             complete ? "optimal" : "budget-exhausted");
  out.status = complete ? SearchStatus::kOptimal : SearchStatus::kBudgetExhausted;
  out.trace = trace;
  if (!complete) {
    spdlog::warn("dcon: time budget exhausted after {} nodes; best {} violations",
                 trace.nodes_expanded, out.violations);
  }
  return out;
}

ConsensusResult RankNcon(const std::vector<PreferencePair>& pairs,
                         const std::vector<std::string>& all_papers,
                         const ConsensusConfig& cfg) {
  cfg.Validate();
  const ViolationMatrix vm(pairs);
  const Deadline deadline(cfg.time_budget_seconds);
  SearchTrace trace;
  std::vector<int64_t> descent;

  std::vector<size_t> best = NetWinsOrder(vm);
  int64_t best_cost = InsertionSearch(best, vm, &trace.moves, &descent);
  bool exhausted = false;
  Rng rng = MakeRng(cfg.seed, "ncon-restarts");
  for (int r = 0; r < cfg.restarts && best_cost > 0; ++r) {
    if (deadline.Passed()) {
      exhausted = true;
      break;
    }
    std::vector<size_t> order(vm.size());
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    const int64_t cost = InsertionSearch(order, vm, &trace.moves, nullptr);
    if (cost < best_cost) {
      best_cost = cost;
      best = std::move(order);
      ++trace.incumbent_updates;
    }
  }
  ConsensusResult out = Finish("ncon", vm, best, all_papers, "local-optimum");
  out.status =
      exhausted ? SearchStatus::kBudgetExhausted : SearchStatus::kLocalOptimum;
  out.trace = trace;
  out.descent = std::move(descent);
  return out;
}

}  // namespace peerrank
