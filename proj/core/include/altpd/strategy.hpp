#pragma once

// History encoding, memory-N strategies and payoff parameters for the
// alternating (leader/follower) donation game.
//
// A history of memory N is a word of 2N actions, oldest round first. For the
// leader (p) the pairs are (p-action, q-action) of the last N rounds. For the
// follower (q) the word starts with its own action N rounds ago and ends
// with the action the leader has just played. Words are encoded as binary
// numbers with C = 0, D = 1 and the first symbol most significant, which is
// the lexicographic order with C before D.
//
// Note on ordering: one could read "pair k is k rounds ago" (newest first).
// The N=3 worked example and the recursive matrix construction only agree
// with oldest-first, so that is the convention used throughout.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace altpd {

enum class Action : std::uint8_t { C = 0, D = 1 };

constexpr Action flip(Action a) noexcept { return a == Action::C ? Action::D : Action::C; }
constexpr unsigned bit(Action a) noexcept { return static_cast<unsigned>(a); }
char to_char(Action a) noexcept;
Action action_from_char(char symbol);

using StateIndex = std::size_t;

inline constexpr int kMaxMemory = 15;

// 4^memory; throws std::invalid_argument outside [1, kMaxMemory].
std::size_t state_count(int memory);

// Inverse of state_count: returns N for a length 4^N, or 0 if the length is
// not such a power.
int memory_for_size(std::size_t size) noexcept;

class History {
 public:
  History(int memory, std::vector<Action> actions);
  // Parses a word over {C, D} (case-insensitive); '|' separators are ignored.
  History(int memory, std::string_view symbols);

  int memory() const noexcept { return memory_; }
  std::span<const Action> actions() const noexcept { return actions_; }
  Action operator[](std::size_t i) const { return actions_.at(i); }
  std::string str() const;

  friend bool operator==(const History&, const History&) = default;

 private:
  int memory_;
  std::vector<Action> actions_;
};

StateIndex encode_history(const History& h);
History decode_history(StateIndex index, int memory);

// Index of the word the follower conditions on after the leader has played
// `leader_action` in state h: drop the first symbol of h and append the
// leader's action. For N = 1, (i1, i2) -> (i2, a).
StateIndex follower_index(const History& h, Action leader_action);
StateIndex follower_index(StateIndex state, Action leader_action, int memory);

// State reached from `state` when the next round is (leader, follower):
// drop the oldest pair, append the new one.
StateIndex successor(StateIndex state, Action leader, Action follower, int memory);

// "CD|DC" style label, one pair per round, oldest first.
std::string state_label(StateIndex index, int memory);

class Strategy {
 public:
  // probs[i] is the probability of cooperating after history i.
  Strategy(int memory, std::vector<double> probs);

  static Strategy constant(int memory, double value);

  int memory() const noexcept { return memory_; }
  std::size_t size() const noexcept { return probs_.size(); }
  std::span<const double> probs() const noexcept { return probs_; }
  double operator[](StateIndex i) const { return probs_[i]; }
  double at(const History& h) const;

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  int memory_;
  std::vector<double> probs_;
};

// Per-choice payoffs: a cooperator receives a and grants b to the other
// player; a defector receives c and grants d.
struct RawPayoffs {
  double a;
  double b;
  double c;
  double d;
};

// True iff c > a and c - a < b - d.
bool validate_raw(const RawPayoffs& r) noexcept;

// Round totals {R, S, T, P} = {a+b, a+d, c+b, c+d}.
std::array<double, 4> round_totals(const RawPayoffs& r) noexcept;

// Donation game with benefit B and cost C, 0 < C < B.
class PayoffParams {
 public:
  PayoffParams(double benefit, double cost);

  double benefit() const noexcept { return benefit_; }
  double cost() const noexcept { return cost_; }

  double reward() const noexcept { return benefit_ - cost_; }   // R, mutual cooperation
  double sucker() const noexcept { return -cost_; }             // S
  double temptation() const noexcept { return benefit_; }       // T
  double punishment() const noexcept { return 0.0; }            // P, mutual defection

  // {R, S, T, P}, indexed by the (leader, follower) pair CC, CD, DC, DD.
  std::array<double, 4> round_payoffs() const noexcept {
    return {reward(), sucker(), temptation(), punishment()};
  }

 private:
  double benefit_;
  double cost_;
};

// b = -a + B, c = a + C, d = -a - C - B.
RawPayoffs raw_from_donation(const PayoffParams& params, double a);

}  // namespace altpd
