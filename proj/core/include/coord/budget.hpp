#pragma once

namespace coord {

// Team-shared packet budget: a hard cap on accepted sends over a match.
// consumed never exceeds the total and never decreases.
class BudgetTracker {
public:
    BudgetTracker() = default;
    BudgetTracker(int total_budget, double match_length)
        : total_(total_budget), match_length_(match_length) {}

    // Accounts one send attempt at time `now`; false when the budget is
    // spent (the packet must not enter the channel).
    bool try_send(double now) {
        (void)now;
        if (consumed_ >= total_) return false;
        ++consumed_;
        return true;
    }

    int total() const { return total_; }
    int consumed() const { return consumed_; }
    int remaining() const { return total_ - consumed_; }
    double match_length() const { return match_length_; }

private:
    int total_ = 1200;
    int consumed_ = 0;
    double match_length_ = 1200.0;
};

}  // namespace coord
