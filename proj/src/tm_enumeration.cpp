#include "mktcx/tm_enumeration.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>
#include <unordered_map>

namespace mktcx::bdm {
namespace {

void check_states(int states) {
  if (states < 1 || states > kMaxStates) {
    throw Error("states must be between 1 and " + std::to_string(kMaxStates) + ", got " +
                std::to_string(states));
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t resolved_bound(const EnumerationOptions& opts) {
  return opts.step_bound == 0 ? busy_beaver_steps(opts.states) : opts.step_bound;
}

std::string checkpoint_header(const EnumerationOptions& opts, std::size_t shard) {
  std::ostringstream os;
  os << "# mktcx-ctm-checkpoint states=" << opts.states
     << " step_bound=" << resolved_bound(opts)
     << " mode=" << (opts.samples ? "sampled" : "exhaustive")
     << " samples=" << opts.samples.value_or(0) << " seed=" << opts.seed
     << " shard=" << shard << " shards=" << opts.shards;
  return os.str();
}

std::filesystem::path checkpoint_path(const EnumerationOptions& opts, std::size_t shard) {
  return opts.checkpoint_dir / ("shard-" + std::to_string(shard) + "-of-" +
                                std::to_string(opts.shards) + ".ckpt");
}

}  // namespace

std::uint64_t busy_beaver_steps(int states) {
  check_states(states);
  constexpr std::array<std::uint64_t, 4> steps{1, 6, 21, 107};
  return steps[static_cast<std::size_t>(states - 1)];
}

std::uint64_t machine_count(int states) {
  check_states(states);
  const auto base = static_cast<std::uint64_t>(4 * states + 2);
  std::uint64_t count = 1;
  for (int i = 0; i < 2 * states; ++i) count *= base;
  return count;
}

TuringMachine TuringMachine::from_index(int states, std::uint64_t index) {
  const auto base = static_cast<std::uint64_t>(4 * states + 2);
  const auto moving = static_cast<std::uint64_t>(4 * states);
  TuringMachine tm;
  tm.states_ = states;
  for (int entry = 0; entry < 2 * states; ++entry) {
    const std::uint64_t digit = index % base;
    index /= base;
    Transition& t = tm.table_[static_cast<std::size_t>(entry)];
    if (digit < moving) {
      t.write = static_cast<std::uint8_t>(digit & 1U);
      t.move = (digit & 2U) ? std::int8_t{1} : std::int8_t{-1};
      t.next = static_cast<std::uint8_t>(digit >> 2);
      t.halts = false;
    } else {
      t.write = static_cast<std::uint8_t>(digit - moving);
      t.move = 0;
      t.halts = true;
    }
  }
  return tm;
}

TuringMachine::TuringMachine(int states, const std::vector<Transition>& table) : states_(states) {
  check_states(states);
  if (table.size() != static_cast<std::size_t>(2 * states)) {
    throw Error("transition table must hold 2 entries per state");
  }
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& t = table[i];
    if (t.write > 1 || (!t.halts && (t.next >= states || (t.move != 1 && t.move != -1)))) {
      throw Error("invalid transition at entry " + std::to_string(i));
    }
    table_[i] = t;
  }
}

Simulator::Simulator(std::uint64_t step_bound)
    : step_bound_(step_bound), tape_(2 * step_bound + 3, 0) {}

std::optional<std::string> Simulator::run(const TuringMachine& tm) {
  std::size_t head = step_bound_ + 1;
  std::size_t lo = head;
  std::size_t hi = head;
  int state = 0;
  std::optional<std::string> output;

  for (std::uint64_t step = 0; step < step_bound_; ++step) {
    const Transition& t = tm.at(state, tape_[head]);
    tape_[head] = t.write;
    if (t.halts) {
      output.emplace(hi - lo + 1, '0');
      for (std::size_t i = lo; i <= hi; ++i) {
        if (tape_[i]) (*output)[i - lo] = '1';
      }
      break;
    }
    head = t.move > 0 ? head + 1 : head - 1;
    lo = std::min(lo, head);
    hi = std::max(hi, head);
    state = t.next;
  }
  std::fill(tape_.begin() + static_cast<std::ptrdiff_t>(lo),
            tape_.begin() + static_cast<std::ptrdiff_t>(hi) + 1, std::uint8_t{0});
  return output;
}

std::uint64_t OutputDistribution::total() const {
  std::uint64_t sum = 0;
  for (const auto& [_, c] : counts) sum += c;
  return sum;
}

double OutputDistribution::frequency(const std::string& output) const {
  const auto it = counts.find(output);
  if (it == counts.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(total());
}

std::uint64_t sampled_machine_index(int states, std::uint64_t seed, std::uint64_t j) {
  const std::uint64_t count = machine_count(states);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % count;
  std::uint64_t x = splitmix64(seed) ^ (j * 0xd1b54a32d192ed03ULL);
  while (true) {
    const std::uint64_t r = splitmix64(x);
    if (r < limit) return r % count;
    x += 0x9e3779b97f4a7c15ULL;
  }
}

OutputDistribution enumerate_shard(const EnumerationOptions& opts, std::size_t shard) {
  check_states(opts.states);
  if (opts.shards == 0 || shard >= opts.shards) throw Error("shard index out of range");
  const std::uint64_t bound = resolved_bound(opts);
  const std::uint64_t space = opts.samples ? *opts.samples : machine_count(opts.states);
  if (!opts.samples && space > opts.machine_budget) {
    throw BudgetExceeded("exhaustive enumeration of " + std::to_string(opts.states) +
                         "-state machines needs " + std::to_string(space) +
                         " runs, budget is " + std::to_string(opts.machine_budget) +
                         "; use sampling");
  }
  const auto slice = [&](std::size_t s) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(space) * s) / opts.shards);
  };
  const std::uint64_t begin = slice(shard);
  const std::uint64_t end = slice(shard + 1);

  OutputDistribution dist;
  dist.states = opts.states;
  dist.step_bound = bound;
  dist.sampled = opts.samples.has_value();
  dist.machines = end - begin;

  Simulator sim(bound);
  std::unordered_map<std::string, std::uint64_t> counts;
  for (std::uint64_t i = begin; i < end; ++i) {
    const std::uint64_t index =
        opts.samples ? sampled_machine_index(opts.states, opts.seed, i) : i;
    auto out = sim.run(TuringMachine::from_index(opts.states, index));
    if (!out) continue;
    ++dist.halted;
    std::string complement = *out;
    for (char& c : complement) c = c == '0' ? '1' : '0';
    ++counts[std::move(*out)];
    ++counts[std::move(complement)];
  }
  dist.counts.insert(counts.begin(), counts.end());
  return dist;
}

void merge_into(OutputDistribution& into, const OutputDistribution& from) {
  if (into.states == 0 && into.machines == 0 && into.counts.empty()) {
    into.states = from.states;
    into.step_bound = from.step_bound;
    into.sampled = from.sampled;
  } else if (into.states != from.states || into.step_bound != from.step_bound ||
             into.sampled != from.sampled) {
    throw Error("cannot merge enumerations with different parameters");
  }
  into.machines += from.machines;
  into.halted += from.halted;
  for (const auto& [x, c] : from.counts) into.counts[x] += c;
}

std::string write_checkpoint(const OutputDistribution& dist, const EnumerationOptions& opts,
                             std::size_t shard) {
  std::ostringstream os;
  os << checkpoint_header(opts, shard) << '\n'
     << "machines=" << dist.machines << '\n'
     << "halted=" << dist.halted << '\n';
  for (const auto& [x, c] : dist.counts) os << x << '\t' << c << '\n';
  os << "end\n";
  return os.str();
}

std::optional<OutputDistribution> read_checkpoint(const std::string& text,
                                                  const EnumerationOptions& opts,
                                                  std::size_t shard) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line) || line != checkpoint_header(opts, shard)) return std::nullopt;

  OutputDistribution dist;
  dist.states = opts.states;
  dist.step_bound = resolved_bound(opts);
  dist.sampled = opts.samples.has_value();
  const auto read_field = [&](std::string_view key, std::uint64_t& out) {
    if (!std::getline(is, line) || line.rfind(key, 0) != 0) return false;
    try {
      out = std::stoull(line.substr(key.size()));
    } catch (const std::exception&) {
      return false;
    }
    return true;
  };
  if (!read_field("machines=", dist.machines) || !read_field("halted=", dist.halted)) {
    return std::nullopt;
  }
  while (std::getline(is, line)) {
    if (line == "end") return dist;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) return std::nullopt;
    try {
      dist.counts[line.substr(0, tab)] = std::stoull(line.substr(tab + 1));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return std::nullopt;  // truncated
}

OutputDistribution enumerate_machines(const EnumerationOptions& opts) {
  check_states(opts.states);
  if (opts.shards == 0) throw Error("shards must be at least 1");
  if (!opts.checkpoint_dir.empty()) std::filesystem::create_directories(opts.checkpoint_dir);

  std::vector<std::optional<OutputDistribution>> results(opts.shards);
  std::vector<std::exception_ptr> errors(opts.shards);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t s = next++; s < opts.shards; s = next++) {
      try {
        if (!opts.checkpoint_dir.empty()) {
          std::ifstream in(checkpoint_path(opts, s), std::ios::binary);
          if (in) {
            std::ostringstream ss;
            ss << in.rdbuf();
            if (auto restored = read_checkpoint(ss.str(), opts, s)) {
              results[s] = std::move(restored);
              continue;
            }
          }
        }
        results[s] = enumerate_shard(opts, s);
        if (!opts.checkpoint_dir.empty()) {
          const auto path = checkpoint_path(opts, s);
          const auto tmp = std::filesystem::path(path).concat(".tmp");
          {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << write_checkpoint(*results[s], opts, s);
            if (!out) throw Error("failed writing checkpoint " + tmp.string());
          }
          std::filesystem::rename(tmp, path);
        }
      } catch (...) {
        errors[s] = std::current_exception();
      }
    }
  };

  std::size_t threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, opts.shards);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  OutputDistribution merged;
  for (const auto& r : results) merge_into(merged, *r);
  return merged;
}

}  // namespace mktcx::bdm
