#include "altpd/strategy.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace altpd {

char to_char(Action a) noexcept { return a == Action::C ? 'C' : 'D'; }

Action action_from_char(char symbol) {
  switch (std::toupper(static_cast<unsigned char>(symbol))) {
    case 'C':
      return Action::C;
    case 'D':
      return Action::D;
    default:
      throw std::invalid_argument(std::string("invalid action symbol '") + symbol + "'");
  }
}

std::size_t state_count(int memory) {
  if (memory < 1 || memory > kMaxMemory) {
    throw std::invalid_argument("memory must lie in [1, " + std::to_string(kMaxMemory) + "]");
  }
  return std::size_t{1} << (2 * memory);
}

int memory_for_size(std::size_t size) noexcept {
  for (int n = 1; n <= kMaxMemory; ++n) {
    if (size == (std::size_t{1} << (2 * n))) return n;
  }
  return 0;
}

namespace {

void check_length(int memory, std::size_t length) {
  if (memory < 1 || memory > kMaxMemory || length != static_cast<std::size_t>(2 * memory)) {
    throw std::invalid_argument("history length must be 2N");
  }
}

std::vector<Action> parse_symbols(std::string_view symbols) {
  std::vector<Action> out;
  out.reserve(symbols.size());
  for (char ch : symbols) {
    if (ch == '|' || ch == ' ') continue;
    out.push_back(action_from_char(ch));
  }
  return out;
}

void check_state(StateIndex state, int memory) {
  if (state >= state_count(memory)) throw std::out_of_range("state index out of range");
}

}  // namespace

History::History(int memory, std::vector<Action> actions)
    : memory_(memory), actions_(std::move(actions)) {
  check_length(memory_, actions_.size());
}

History::History(int memory, std::string_view symbols) : History(memory, parse_symbols(symbols)) {}

std::string History::str() const {
  std::string s;
  s.reserve(actions_.size());
  for (Action a : actions_) s.push_back(to_char(a));
  return s;
}

StateIndex encode_history(const History& h) {
  StateIndex index = 0;
  for (Action a : h.actions()) index = (index << 1) | bit(a);
  return index;
}

History decode_history(StateIndex index, int memory) {
  check_state(index, memory);
  const int length = 2 * memory;
  std::vector<Action> actions(length);
  for (int i = length - 1; i >= 0; --i) {
    actions[i] = (index & 1u) ? Action::D : Action::C;
    index >>= 1;
  }
  return History(memory, std::move(actions));
}

StateIndex follower_index(StateIndex state, Action leader_action, int memory) {
  check_state(state, memory);
  const StateIndex mask = state_count(memory) - 1;
  return ((state << 1) & mask) | bit(leader_action);
}

StateIndex follower_index(const History& h, Action leader_action) {
  return follower_index(encode_history(h), leader_action, h.memory());
}

StateIndex successor(StateIndex state, Action leader, Action follower, int memory) {
  check_state(state, memory);
  const StateIndex mask = state_count(memory) - 1;
  return ((state << 2) & mask) | (bit(leader) << 1) | bit(follower);
}

std::string state_label(StateIndex index, int memory) {
  const std::string word = decode_history(index, memory).str();
  std::string label;
  for (std::size_t i = 0; i < word.size(); i += 2) {
    if (i > 0) label.push_back('|');
    label.append(word, i, 2);
  }
  return label;
}

Strategy::Strategy(int memory, std::vector<double> probs) : memory_(memory), probs_(std::move(probs)) {
  if (probs_.size() != state_count(memory_)) {
    throw std::invalid_argument("strategy length must be 4^N");
  }
  for (double v : probs_) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("strategy entries must lie in [0, 1]");
    }
  }
}

Strategy Strategy::constant(int memory, double value) {
  return Strategy(memory, std::vector<double>(state_count(memory), value));
}

double Strategy::at(const History& h) const {
  if (h.memory() != memory_) throw std::invalid_argument("history memory does not match strategy");
  return probs_[encode_history(h)];
}

bool validate_raw(const RawPayoffs& r) noexcept { return r.c > r.a && (r.c - r.a) < (r.b - r.d); }

std::array<double, 4> round_totals(const RawPayoffs& r) noexcept {
  return {r.a + r.b, r.a + r.d, r.c + r.b, r.c + r.d};
}

PayoffParams::PayoffParams(double benefit, double cost) : benefit_(benefit), cost_(cost) {
  if (!(std::isfinite(benefit) && std::isfinite(cost) && cost > 0.0 && cost < benefit)) {
    throw std::invalid_argument("payoff parameters require 0 < C < B");
  }
}

RawPayoffs raw_from_donation(const PayoffParams& params, double a) {
  const double B = params.benefit();
  const double C = params.cost();
  return RawPayoffs{a, -a + B, a + C, -a - C - B};
}

}  // namespace altpd
