#include "privlog/dafsa.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

#include "privlog/errors.hpp"

namespace privlog {

int Dafsa::transition_count() const {
  int n = 0;
  for (const auto& moves : next) n += static_cast<int>(moves.size());
  return n;
}

bool Dafsa::accepts(const Variant& word) const {
  int state = 0;
  for (const auto& label : word) {
    auto it = next[state].find(label);
    if (it == next[state].end()) return false;
    state = it->second;
  }
  return accepting[state];
}

std::vector<Variant> Dafsa::language() const {
  std::vector<Variant> words;
  Variant path;
  std::function<void(int)> walk = [&](int state) {
    if (accepting[state]) words.push_back(path);
    for (const auto& [label, target] : next[state]) {
      path.push_back(label);
      walk(target);
      path.pop_back();
    }
  };
  walk(0);
  return words;
}

int Dafsa::in_degree(int state) const {
  int n = 0;
  for (const auto& moves : next)
    for (const auto& [label, target] : moves)
      if (target == state) ++n;
  return n;
}

namespace {

// Incremental construction over lexicographically sorted words; suffixes of
// finished words are folded into a registry of unique right languages, so
// the automaton is minimal when the last word is sealed.
class DafsaBuilder {
 public:
  int add_word_states(const Variant& word, int from, std::size_t at) {
    int state = from;
    for (std::size_t i = at; i < word.size(); ++i) {
      int fresh = static_cast<int>(moves_.size());
      moves_.emplace_back();
      accepting_.push_back(false);
      alive_.push_back(true);
      moves_[state].emplace_back(word[i], fresh);
      state = fresh;
    }
    accepting_[state] = true;
    return state;
  }

  void insert(const Variant& word) {
    int state = 0;
    std::size_t i = 0;
    while (i < word.size()) {
      int target = find_move(state, word[i]);
      if (target < 0) break;
      state = target;
      ++i;
    }
    if (!moves_[state].empty()) replace_or_register(state);
    add_word_states(word, state, i);
  }

  Dafsa seal() {
    if (!moves_[0].empty()) replace_or_register(0);
    // Compact ids, preserving construction order; dead states drop out.
    std::vector<int> fresh(moves_.size(), -1);
    int next_id = 0;
    for (std::size_t s = 0; s < moves_.size(); ++s)
      if (alive_[s]) fresh[s] = next_id++;
    Dafsa dafsa;
    dafsa.next.resize(next_id);
    dafsa.accepting.resize(next_id, false);
    for (std::size_t s = 0; s < moves_.size(); ++s) {
      if (!alive_[s]) continue;
      dafsa.accepting[fresh[s]] = accepting_[s];
      for (const auto& [label, target] : moves_[s])
        dafsa.next[fresh[s]][label] = fresh[target];
    }
    return dafsa;
  }

  DafsaBuilder() {
    moves_.emplace_back();
    accepting_.push_back(false);
    alive_.push_back(true);
  }

 private:
  using Signature = std::pair<bool, std::vector<std::pair<std::string, int>>>;

  Signature signature(int state) const {
    auto moves = moves_[state];
    std::sort(moves.begin(), moves.end());
    return {accepting_[state], std::move(moves)};
  }

  int find_move(int state, const std::string& label) const {
    for (const auto& [l, target] : moves_[state])
      if (l == label) return target;
    return -1;
  }

  void replace_or_register(int state) {
    auto& [label, child] = moves_[state].back();
    if (!moves_[child].empty()) replace_or_register(child);
    auto sig = signature(child);
    auto it = registry_.find(sig);
    if (it != registry_.end()) {
      alive_[child] = false;
      child = it->second;
    } else {
      registry_.emplace(std::move(sig), child);
    }
  }

  // Transitions in insertion order: the most recent one is the active path.
  std::vector<std::vector<std::pair<std::string, int>>> moves_;
  std::vector<bool> accepting_;
  std::vector<bool> alive_;
  std::map<Signature, int> registry_;
};

}  // namespace

Dafsa build_minimal_dafsa(const std::vector<Variant>& variants) {
  if (variants.empty())
    throw ValidationError("cannot build an automaton from zero variants");
  std::vector<Variant> words = variants;
  std::sort(words.begin(), words.end());
  words.erase(std::unique(words.begin(), words.end()), words.end());
  for (const auto& word : words)
    if (word.empty()) throw ValidationError("empty variant");

  DafsaBuilder builder;
  for (const auto& word : words) builder.insert(word);
  return builder.seal();
}

std::string to_dot(const Dafsa& dafsa) {
  std::string out = "digraph dafsa {\n  rankdir=LR;\n";
  for (int s = 0; s < dafsa.state_count(); ++s) {
    out += "  s" + std::to_string(s) + " [shape=" +
           (dafsa.accepting[s] ? "doublecircle" : "circle") + "];\n";
  }
  for (int s = 0; s < dafsa.state_count(); ++s)
    for (const auto& [label, target] : dafsa.next[s])
      out += "  s" + std::to_string(s) + " -> s" + std::to_string(target) +
             " [label=\"" + label + "\"];\n";
  out += "}\n";
  return out;
}

CommonAffixes common_prefixes_suffixes(const Dafsa& dafsa) {
  std::set<Variant> prefixes, suffixes;
  std::vector<int> fan_in(dafsa.state_count(), 0);
  for (int s = 0; s < dafsa.state_count(); ++s)
    for (const auto& [label, target] : dafsa.next[s]) ++fan_in[target];

  Variant path;
  std::function<void(int)> down = [&](int state) {
    if (dafsa.out_degree(state) > 1 && !path.empty()) prefixes.insert(path);
    for (const auto& [label, target] : dafsa.next[state]) {
      path.push_back(label);
      down(target);
      path.pop_back();
    }
  };
  down(0);

  // Suffix sets of every state, built bottom-up over the acyclic graph.
  std::vector<std::set<Variant>> suffix_sets(dafsa.state_count());
  std::vector<bool> done(dafsa.state_count(), false);
  std::function<void(int)> up = [&](int state) {
    if (done[state]) return;
    done[state] = true;
    if (dafsa.accepting[state]) suffix_sets[state].insert(Variant{});
    for (const auto& [label, target] : dafsa.next[state]) {
      up(target);
      for (const auto& rest : suffix_sets[target]) {
        Variant word{label};
        word.insert(word.end(), rest.begin(), rest.end());
        suffix_sets[state].insert(std::move(word));
      }
    }
  };
  up(0);
  for (int s = 0; s < dafsa.state_count(); ++s)
    if (fan_in[s] > 1)
      for (const auto& word : suffix_sets[s])
        if (!word.empty()) suffixes.insert(word);

  return {{prefixes.begin(), prefixes.end()}, {suffixes.begin(), suffixes.end()}};
}

std::size_t AnnotatedLog::event_count() const {
  std::size_t n = 0;
  for (const auto& trace : traces) n += trace.events.size();
  return n;
}

AnnotatedLog annotate_log(const EventLog& log, const Dafsa& dafsa) {
  validate(log);
  AnnotatedLog annotated;
  annotated.dafsa = dafsa;
  RelativeTimes times = compute_relative_times(log);
  annotated.log_start = times.log_start;

  std::map<Variant, int> variant_ids;
  for (std::size_t t = 0; t < log.traces.size(); ++t) {
    const Trace& trace = log.traces[t];
    Variant variant = variant_of(trace);
    auto [it, fresh] =
        variant_ids.emplace(variant, static_cast<int>(annotated.variants.size()));
    if (fresh) annotated.variants.push_back(variant);

    AnnotatedTrace out;
    out.case_id = trace.case_id;
    out.variant_id = it->second;
    int state = 0;
    for (std::size_t i = 0; i < trace.events.size(); ++i) {
      const std::string& label = trace.events[i].activity;
      auto move = dafsa.next[state].find(label);
      if (move == dafsa.next[state].end())
        throw ValidationError("case '" + trace.case_id +
                              "' is not accepted by the automaton (stuck at '" +
                              label + "')");
      AnnotatedEvent event;
      event.activity = label;
      event.source = state;
      event.target = move->second;
      event.is_start = i == 0;
      event.rel_time = i == 0 ? times.cases[t].start_offset : times.cases[t].deltas[i];
      out.events.push_back(std::move(event));
      state = move->second;
    }
    if (!dafsa.accepting[state])
      throw ValidationError("case '" + trace.case_id +
                            "' stops in a non-accepting state");
    annotated.traces.push_back(std::move(out));
  }
  return annotated;
}

ContingencyTable contingency_table(const AnnotatedLog& log) {
  std::map<std::tuple<int, std::string, int>, std::int64_t> counts;
  for (const auto& trace : log.traces)
    for (const auto& event : trace.events)
      ++counts[{event.source, event.activity, event.target}];
  ContingencyTable table;
  for (const auto& [key, count] : counts)
    table.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
  return table;
}

VariantIndex build_variant_index(const AnnotatedLog& log) {
  VariantIndex index;
  ContingencyTable table = contingency_table(log);
  std::map<std::tuple<int, std::string, int>, int> transition_ids;
  for (const auto& row : table) {
    transition_ids[{row.source, row.label, row.target}] =
        static_cast<int>(index.transitions.size());
    index.transitions.push_back({row.source, row.label, row.target, row.count, 0, 0, {}});
  }

  index.variant_traces.resize(log.variants.size());
  index.variant_path.resize(log.variants.size());
  for (std::size_t t = 0; t < log.traces.size(); ++t)
    index.variant_traces[log.traces[t].variant_id].push_back(static_cast<int>(t));

  for (std::size_t v = 0; v < log.variants.size(); ++v) {
    if (index.variant_traces[v].empty()) continue;  // no live instances
    int state = 0;
    for (const auto& label : log.variants[v]) {
      int target = log.dafsa.next[state].at(label);
      int id = transition_ids.at({state, label, target});
      index.variant_path[v].push_back(id);
      index.transitions[id].variant_ids.push_back(static_cast<int>(v));
      state = target;
    }
  }
  // A variant visits each transition at most once (the graph is acyclic),
  // so variant_ids needs no dedup; keep them sorted for determinism.
  for (auto& entry : index.transitions)
    std::sort(entry.variant_ids.begin(), entry.variant_ids.end());
  return index;
}

}  // namespace privlog
