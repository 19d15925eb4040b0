#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "btu/stabilizer.hpp"

using namespace btu;

namespace {

std::string temp_path(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("btu_test_" + name);
  std::filesystem::remove(p);
  return p.string();
}

}  // namespace

TEST_SUITE("stabilizer") {
  TEST_CASE("linear flag stabiliser at e=1") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    StabilizerOptions opt;
    opt.threads = 1;
    const StabilizerReport r = exhaustive_flag_stabilizer(f, u, opt);
    CHECK(r.ok());
    CHECK(r.complete);
    CHECK(r.stabilisers.size() == 64);
    CHECK(r.all_linear_in_g);
    CHECK(r.matches_expected_group);
    CHECK(r.candidate_space == 1040449536ull);
    CHECK(r.candidates_scanned == r.candidate_space);
    CHECK(r.shard_count == 3969);
    CHECK(r.full_checks == 192);
    CHECK(r.flag_group_order == 1040449536ull);
    CHECK(r.orbit_size == 16257024ull);
    const std::vector<std::uint64_t> rejected{910393344, 115605504, 12644352, 1580544, 196608, 25088, 3456, 448};
    CHECK(r.rejected_by_probe == rejected);
  }

  TEST_CASE("checkpoint resume and truncation") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    const std::string path = temp_path("resume.ckpt");
    StabilizerOptions opt;
    opt.threads = 1;
    opt.checkpoint_path = path;
    opt.shard_limit = 1000;
    const StabilizerReport first = exhaustive_flag_stabilizer(f, u, opt);
    CHECK_FALSE(first.complete);
    CHECK(first.shards_done == 1000);

    CheckpointHeader h;
    std::vector<ShardRecord> recs;
    std::uint64_t valid = 0;
    REQUIRE(read_checkpoint(path, h, recs, &valid));
    CHECK(h.e == 1);
    CHECK_FALSE(h.semilinear);
    CHECK(h.shard_count == 3969);
    CHECK(recs.size() == 1000);
    CHECK(valid == std::filesystem::file_size(path));

    // Cut into the last record; it must be dropped.
    std::filesystem::resize_file(path, valid - 5);
    REQUIRE(read_checkpoint(path, h, recs, &valid));
    CHECK(recs.size() == 999);

    opt.shard_limit = 0;
    const StabilizerReport rest = exhaustive_flag_stabilizer(f, u, opt);
    CHECK(rest.complete);
    CHECK(rest.shards_resumed == 999);
    CHECK(rest.ok());
    CHECK(rest.stabilisers.size() == 64);
    CHECK(rest.full_checks == 192);
    REQUIRE(read_checkpoint(path, h, recs, &valid));
    CHECK(recs.size() == 3969);
    std::filesystem::remove(path);
  }

  TEST_CASE("checkpoint mismatch and corruption") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    const std::string path = temp_path("mismatch.ckpt");
    StabilizerOptions opt;
    opt.threads = 1;
    opt.checkpoint_path = path;
    opt.shard_limit = 3;
    exhaustive_flag_stabilizer(f, u, opt);
    opt.semilinear = true;
    CHECK_THROWS_AS(exhaustive_flag_stabilizer(f, u, opt), std::runtime_error);
    {
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out << "NOPE and some more bytes for the header";
    }
    CheckpointHeader h;
    std::vector<ShardRecord> recs;
    CHECK_THROWS_AS(read_checkpoint(path, h, recs), std::runtime_error);
    std::filesystem::remove(path);
    CHECK_FALSE(read_checkpoint(path, h, recs));
  }

  TEST_CASE("budget") {
    const FieldCtx f = FieldCtx::build(1);
    const UnitalSet u = build_bt_unital(f);
    StabilizerOptions opt;
    opt.budget = 1000;
    CHECK_THROWS_AS(exhaustive_flag_stabilizer(f, u, opt), BudgetExceeded);
    const FieldCtx f2 = FieldCtx::build(2);
    const UnitalSet u2 = build_bt_unital(f2);
    CHECK_THROWS_AS(exhaustive_flag_stabilizer(f2, u2, StabilizerOptions{}), BudgetExceeded);
    StabilizerOptions forced;
    forced.force = true;
    forced.budget = 1;
    CHECK_THROWS_AS(exhaustive_flag_stabilizer(f2, u2, forced), BudgetExceeded);
  }
}
