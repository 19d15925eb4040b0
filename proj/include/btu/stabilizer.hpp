#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "btu/collineation.hpp"
#include "btu/field.hpp"
#include "btu/unital.hpp"

namespace btu {

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct StabilizerOptions {
  bool semilinear = false;
  unsigned threads = 0;
  std::uint64_t budget = 0;     // maximum candidate count, 0 = unlimited
  bool force = false;           // permit e >= 2
  std::string checkpoint_path;  // empty = no checkpoint
  std::uint64_t shard_limit = 0;  // process at most this many pending shards, 0 = all
};

/// Exhaustive search of the flag group fixing P_inf and l_inf:
/// matrices (1, x12, x13 | 0, x22, x23 | 0, 0, x33), x22*x33 != 0, times Frobenius exponents when
/// semilinear. Any collineation stabilising U fixes P_inf (the only point of U with the Baer
/// subline property) and its tangent l_inf, so this search covers the full stabiliser.
///
/// The space is sharded by (frob, x22, x33). Probe points with s = t = 0 only see the first row of
/// the matrix; they are tested once per (x12, x13) prefix, and a rejection there discards all q^2
/// values of x23 at once.
struct StabilizerReport {
  int e = 0;
  bool semilinear = false;
  std::uint64_t candidate_space = 0;
  std::uint64_t candidates_scanned = 0;
  std::uint64_t shard_count = 0;
  std::uint64_t shards_done = 0;
  std::uint64_t shards_resumed = 0;  // shards taken from the checkpoint
  bool complete = false;
  std::vector<ProjPoint> probes;
  std::vector<std::uint64_t> rejected_by_probe;  // candidates discarded at each probe
  std::uint64_t full_checks = 0;                 // candidates that passed every probe
  std::vector<Collineation> stabilisers;         // sorted
  bool all_linear_in_g = false;                  // every frob-0 stabiliser is some M_{u,v}
  bool matches_expected_group = false;           // equals G (linear) or G<psi> (semilinear)
  std::uint64_t flag_group_order = 0;            // |H|, times 4e+2 when semilinear
  std::uint64_t orbit_size = 0;                  // flag_group_order / |stabilisers|
  bool ok() const;
};

/// Throws BudgetExceeded when e >= 2 without force, or when the candidate space exceeds a nonzero
/// budget; std::runtime_error on an unreadable or mismatched checkpoint.
StabilizerReport exhaustive_flag_stabilizer(const FieldCtx& f, const UnitalSet& u, const StabilizerOptions& opt);

/// One checkpoint record, as stored on disk.
struct ShardRecord {
  std::uint32_t shard = 0;
  std::uint64_t candidates = 0;
  std::uint64_t full_checks = 0;
  std::vector<std::uint64_t> rejected_by_probe;
  std::vector<std::array<std::uint32_t, 3>> survivors;  // (x12, x13, x23) bit patterns
};

struct CheckpointHeader {
  std::uint32_t e = 0;
  bool semilinear = false;
  std::uint64_t shard_count = 0;
};

/// Reads all complete records; a truncated trailing record is ignored. Returns false when the
/// file does not exist. Throws std::runtime_error on a bad magic or version.
bool read_checkpoint(const std::string& path, CheckpointHeader& header, std::vector<ShardRecord>& records,
                     std::uint64_t* valid_bytes = nullptr);

}  // namespace btu
