#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mktcx/error.hpp"

namespace mktcx::bdm {

/// Largest state count the enumerator supports.
inline constexpr int kMaxStates = 4;

/// Maximum steps of any halting n-state 2-symbol machine from a blank tape
/// (S(1)=1, S(2)=6, S(3)=21, S(4)=107), counting the halting transition.
std::uint64_t busy_beaver_steps(int states);

/// (4n + 2)^(2n): every (state, symbol) entry is one of 4n moving transitions
/// or one of 2 halting writes.
std::uint64_t machine_count(int states);

struct Transition {
  std::uint8_t write = 0;
  std::int8_t move = 0;   ///< -1 left, +1 right, 0 on halt
  std::uint8_t next = 0;  ///< next state, meaningful when !halts
  bool halts = false;
};

/// n-state 2-symbol machine in the Busy Beaver formalism. Halting transitions
/// write a symbol and stop without moving.
class TuringMachine {
 public:
  /// Decodes the canonical machine index in [0, machine_count(states)).
  static TuringMachine from_index(int states, std::uint64_t index);
  /// Builds a machine from its transition table, indexed by 2*state + symbol.
  TuringMachine(int states, const std::vector<Transition>& table);

  int states() const noexcept { return states_; }
  const Transition& at(int state, int symbol) const { return table_[2 * state + symbol]; }

 private:
  TuringMachine() = default;
  int states_ = 0;
  std::array<Transition, 2 * kMaxStates> table_{};
};

/// Reusable tape for running many machines with the same step bound.
class Simulator {
 public:
  explicit Simulator(std::uint64_t step_bound);

  /// Runs from a blank (all-0) tape starting in state 0. On halting within
  /// the bound returns the contents of every cell the head visited, left to
  /// right, as '0'/'1' text.
  std::optional<std::string> run(const TuringMachine& tm);

  std::uint64_t step_bound() const noexcept { return step_bound_; }

 private:
  std::uint64_t step_bound_;
  std::vector<std::uint8_t> tape_;
};

/// Halting-output counts of an enumeration. Each halting output x is counted
/// together with its complement, which equals also running every machine
/// on a blank tape of 1s.
struct OutputDistribution {
  int states = 0;
  std::uint64_t step_bound = 0;
  std::uint64_t machines = 0;  ///< machines run
  std::uint64_t halted = 0;    ///< machines that halted within the bound
  bool sampled = false;
  std::map<std::string, std::uint64_t> counts;

  std::uint64_t total() const;
  /// m(x): count(x) / total.
  double frequency(const std::string& output) const;
};

struct EnumerationOptions {
  int states = 3;
  /// 0 selects busy_beaver_steps(states).
  std::uint64_t step_bound = 0;
  std::size_t shards = 1;
  /// When set, draws this many machines uniformly at random instead of the
  /// full enumeration.
  std::optional<std::uint64_t> samples;
  std::uint64_t seed = 0;
  /// Exhaustive runs larger than this raise BudgetExceeded.
  std::uint64_t machine_budget = 1'000'000'000ULL;
  /// When non-empty, finished shards are written here and reused on rerun.
  std::filesystem::path checkpoint_dir;
  /// Worker threads; 0 picks hardware concurrency.
  std::size_t threads = 0;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Machine index drawn for sample number `j` (counter-based, so any split of
/// the sample range into shards draws the same machines).
std::uint64_t sampled_machine_index(int states, std::uint64_t seed, std::uint64_t j);

/// Runs one shard: a contiguous slice of the machine (or sample) index range.
OutputDistribution enumerate_shard(const EnumerationOptions& opts, std::size_t shard);

/// Runs every shard (reusing checkpoints when configured) and merges them.
/// The result does not depend on the shard count.
OutputDistribution enumerate_machines(const EnumerationOptions& opts);

/// Sums counts; shards must share states, step bound and mode.
void merge_into(OutputDistribution& into, const OutputDistribution& from);

std::string write_checkpoint(const OutputDistribution& dist, const EnumerationOptions& opts,
                             std::size_t shard);
/// std::nullopt if the text was written for different options or is truncated.
std::optional<OutputDistribution> read_checkpoint(const std::string& text,
                                                  const EnumerationOptions& opts,
                                                  std::size_t shard);

}  // namespace mktcx::bdm
