// Copyright 2026 The AISO Workbench Authors
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


#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace aiso {

/// Raised before a charge that would push the ledger past its limit.
class BudgetExhausted : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Counts copies of the unknown state (or gate) consumed, split by phase.
class BudgetLedger {
  public:
    static constexpr int64_t kUnlimited = std::numeric_limits<int64_t>::max();

    BudgetLedger() = default;
    explicit BudgetLedger(int64_t limit) : limit_(limit) {
        if (limit < 0) throw std::invalid_argument("BudgetLedger: negative limit");
    }

    void charge_acquisition(int64_t copies) { acquisition_ += checked(copies); }
    void charge_shots(int64_t copies) { shots_ += checked(copies); }

    int64_t acquisition_copies() const { return acquisition_; }
    int64_t shot_copies() const { return shots_; }
    int64_t copies_consumed() const { return acquisition_ + shots_; }
    int64_t limit() const { return limit_; }
    int64_t remaining() const { return limit_ - copies_consumed(); }

  private:
    int64_t checked(int64_t copies) const {
        if (copies < 0) throw std::invalid_argument("BudgetLedger: negative charge");
        if (copies > remaining()) {
            throw BudgetExhausted("budget exhausted: " + std::to_string(copies_consumed()) + " of " +
                                  std::to_string(limit_) + " copies used, " + std::to_string(copies) + " requested");
        }
        return copies;
    }

    int64_t limit_ = kUnlimited;
    int64_t acquisition_ = 0;
    int64_t shots_ = 0;
};

}  // namespace aiso
