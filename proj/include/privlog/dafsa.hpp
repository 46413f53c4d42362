#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "privlog/event_log.hpp"

namespace privlog {

// Deterministic acyclic finite state automaton over activity labels.
// State 0 is the start state; ids are construction order, compacted.
struct Dafsa {
  std::vector<std::map<std::string, int>> next;
  std::vector<bool> accepting;

  int state_count() const { return static_cast<int>(next.size()); }
  int transition_count() const;
  bool accepts(const Variant& word) const;
  // All accepted words, lexicographically sorted.
  std::vector<Variant> language() const;
  int in_degree(int state) const;
  int out_degree(int state) const { return static_cast<int>(next[state].size()); }
};

// Minimal DAFSA accepting exactly the given variants (set semantics,
// duplicates collapse). Throws ValidationError on an empty set or an empty
// word.
Dafsa build_minimal_dafsa(const std::vector<Variant>& variants);

// Graphviz rendering for debugging.
std::string to_dot(const Dafsa& dafsa);

// Label paths into states that fan out (out-degree > 1) and label paths from
// states that fan in (in-degree > 1) to an accepting state. Diagnostic only.
struct CommonAffixes {
  std::vector<Variant> prefixes;
  std::vector<Variant> suffixes;
};
CommonAffixes common_prefixes_suffixes(const Dafsa& dafsa);

// One event of a trace replayed through the DAFSA, with the calibration
// fields filled in by later stages (NaN until then).
struct AnnotatedEvent {
  std::string activity;
  int source = -1;
  int target = -1;
  Seconds rel_time = 0;    // start offset for the first event, else delta
  bool is_start = false;
  int group = -1;          // index into the calibration groups
  double norm_time = 0.0;
  double precision = 0.0;
  double prior = 0.0;
  double epsilon_t = 0.0;
};

struct AnnotatedTrace {
  std::string case_id;
  int variant_id = -1;
  std::vector<AnnotatedEvent> events;
};

struct AnnotatedLog {
  Seconds log_start = 0;
  Dafsa dafsa;
  std::vector<Variant> variants;  // id -> label sequence
  std::vector<AnnotatedTrace> traces;

  std::size_t event_count() const;
};

// Replays every trace through the DAFSA (each must be accepted) and attaches
// relative times.
AnnotatedLog annotate_log(const EventLog& log, const Dafsa& dafsa);

// GROUP BY (source, activity, target) over all events, canonically ordered
// by state ids then label.
struct ContingencyRow {
  int source = -1;
  std::string label;
  int target = -1;
  std::int64_t count = 0;
};
using ContingencyTable = std::vector<ContingencyRow>;

ContingencyTable contingency_table(const AnnotatedLog& log);

// Sampling support structure: per transition, the variants that traverse it
// and the noise bookkeeping; per variant, the traces instantiating it.
struct VariantIndex {
  struct TransitionEntry {
    int source = -1;
    std::string label;
    int target = -1;
    std::int64_t count = 0;         // occurrences in the log
    std::int64_t needed_noise = 0;  // filled by the noise draw
    std::int64_t added_noise = 0;   // updated by the sampling loop
    bool quota_met = false;         // |added| reached |needed| at some point
    std::vector<int> variant_ids;
  };

  std::vector<TransitionEntry> transitions;       // contingency order
  std::vector<std::vector<int>> variant_traces;   // variant id -> trace idx
  std::vector<std::vector<int>> variant_path;     // variant id -> transition idx
};

VariantIndex build_variant_index(const AnnotatedLog& log);

}  // namespace privlog
