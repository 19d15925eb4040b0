#include "btu/stabilizer.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <mutex>
#include <set>

#include "btu/parallel.hpp"

namespace btu {

namespace {

constexpr char kMagic[4] = {'B', 'T', 'S', 'C'};
constexpr std::uint32_t kVersion = 1;

void put32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

class Reader {
 public:
  Reader(const std::vector<char>& buf, std::size_t pos) : buf_(buf), pos_(pos) {}
  bool has(std::size_t n) const { return pos_ + n <= buf_.size(); }
  std::size_t pos() const { return pos_; }
  std::uint64_t get(int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf_[pos_ + i])) << (8 * i);
    pos_ += static_cast<std::size_t>(bytes);
    return v;
  }

 private:
  const std::vector<char>& buf_;
  std::size_t pos_;
};

std::string encode_header(const CheckpointHeader& h) {
  std::string out(kMagic, 4);
  put32(out, kVersion);
  put32(out, h.e);
  put32(out, h.semilinear ? 1 : 0);
  put64(out, h.shard_count);
  return out;
}

std::string encode_record(const ShardRecord& r) {
  std::string payload;
  put32(payload, r.shard);
  put64(payload, r.candidates);
  put64(payload, r.full_checks);
  put32(payload, static_cast<std::uint32_t>(r.rejected_by_probe.size()));
  for (const auto v : r.rejected_by_probe) put64(payload, v);
  put32(payload, static_cast<std::uint32_t>(r.survivors.size()));
  for (const auto& s : r.survivors)
    for (const auto v : s) put32(payload, v);
  std::string out;
  put32(out, static_cast<std::uint32_t>(payload.size()));
  return out + payload;
}

struct ShardGeometry {
  std::uint32_t order;  // q^2
  int frobs;

  std::uint64_t count() const { return static_cast<std::uint64_t>(frobs) * (order - 1) * (order - 1); }
  void decode(std::uint64_t id, int& k, Felt& x22, Felt& x33) const {
    const std::uint64_t n = order - 1;
    x33 = Felt{static_cast<std::uint32_t>(id % n + 1)};
    x22 = Felt{static_cast<std::uint32_t>((id / n) % n + 1)};
    k = static_cast<int>(id / (n * n));
  }
};

ShardRecord scan_shard(const FieldCtx& f, const UnitalSet& u, const std::vector<ProjPoint>& probes,
                       const ShardGeometry& geo, std::uint32_t shard) {
  int k = 0;
  Felt x22;
  Felt x33;
  geo.decode(shard, k, x22, x33);
  const std::uint32_t order = geo.order;
  const PointSet& set = u.points();

  struct Probe {
    std::size_t slot;
    Felt y;
    Felt z;
  };
  std::vector<Probe> prefix;
  std::vector<Probe> rest;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const Probe p{i, f.frobenius(probes[i].c[1], k), f.frobenius(probes[i].c[2], k)};
    (p.y.is_zero() ? prefix : rest).push_back(p);
  }
  // Row-vector image of (1, y, z) is (1, x12 + y*x22, x13 + y*x23 + z*x33).
  std::vector<Felt> prefix_z33(prefix.size());
  for (std::size_t i = 0; i < prefix.size(); ++i) prefix_z33[i] = f.mul(prefix[i].z, x33);
  std::vector<Felt> rest_y22(rest.size());
  std::vector<Felt> rest_z33(rest.size());
  for (std::size_t i = 0; i < rest.size(); ++i) {
    rest_y22[i] = f.mul(rest[i].y, x22);
    rest_z33[i] = f.mul(rest[i].z, x33);
  }
  auto member = [&](Felt y, Felt z) {
    return set.contains_index(static_cast<std::size_t>(y.bits) * order + z.bits);
  };

  ShardRecord rec;
  rec.shard = shard;
  rec.rejected_by_probe.assign(probes.size(), 0);
  const Felt z{0};
  const Felt o{1};
  for (std::uint32_t a = 0; a < order; ++a) {
    const Felt x12{a};
    for (std::uint32_t b = 0; b < order; ++b) {
      const Felt x13{b};
      rec.candidates += order;
      bool pass = true;
      for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (!member(x12, x13 + prefix_z33[i])) {
          rec.rejected_by_probe[prefix[i].slot] += order;
          pass = false;
          break;
        }
      }
      if (!pass) continue;
      for (std::uint32_t c = 0; c < order; ++c) {
        const Felt x23{c};
        bool ok = true;
        for (std::size_t i = 0; i < rest.size(); ++i) {
          if (!member(x12 + rest_y22[i], x13 + f.mul(rest[i].y, x23) + rest_z33[i])) {
            ++rec.rejected_by_probe[rest[i].slot];
            ok = false;
            break;
          }
        }
        if (!ok) continue;
        ++rec.full_checks;
        const Collineation cand{{o, x12, x13, z, x22, x23, z, z, x33}, k};
        if (stabilizes(f, cand, u, 0)) rec.survivors.push_back({a, b, c});
      }
    }
  }
  return rec;
}

}  // namespace

bool read_checkpoint(const std::string& path, CheckpointHeader& header, std::vector<ShardRecord>& records,
                     std::uint64_t* valid_bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  const std::vector<char> buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < 24 || std::memcmp(buf.data(), kMagic, 4) != 0)
    throw std::runtime_error("checkpoint: bad magic in " + path);
  Reader r(buf, 4);
  if (r.get(4) != kVersion) throw std::runtime_error("checkpoint: unsupported version in " + path);
  header.e = static_cast<std::uint32_t>(r.get(4));
  header.semilinear = r.get(4) != 0;
  header.shard_count = r.get(8);

  records.clear();
  std::size_t good = r.pos();
  while (r.has(4)) {
    const std::uint64_t len = r.get(4);
    if (!r.has(len)) break;
    const std::size_t end = r.pos() + len;
    ShardRecord rec;
    if (len < 28) break;
    rec.shard = static_cast<std::uint32_t>(r.get(4));
    rec.candidates = r.get(8);
    rec.full_checks = r.get(8);
    const std::uint64_t np = r.get(4);
    if (r.pos() + np * 8 + 4 > end) break;
    for (std::uint64_t i = 0; i < np; ++i) rec.rejected_by_probe.push_back(r.get(8));
    const std::uint64_t ns = r.get(4);
    if (r.pos() + ns * 12 != end) break;
    for (std::uint64_t i = 0; i < ns; ++i) {
      std::array<std::uint32_t, 3> s{};
      for (auto& v : s) v = static_cast<std::uint32_t>(r.get(4));
      rec.survivors.push_back(s);
    }
    records.push_back(std::move(rec));
    good = end;
  }
  if (valid_bytes) *valid_bytes = good;
  return true;
}

bool StabilizerReport::ok() const {
  return complete && all_linear_in_g && matches_expected_group && candidates_scanned == candidate_space;
}

StabilizerReport exhaustive_flag_stabilizer(const FieldCtx& f, const UnitalSet& u, const StabilizerOptions& opt) {
  if (f.e() >= 2 && !opt.force)
    throw BudgetExceeded("exhaustive_flag_stabilizer: e >= 2 needs an explicit override (force)");

  const ShardGeometry geo{f.big_order(), opt.semilinear ? f.degree() : 1};
  const std::uint64_t order = f.big_order();
  StabilizerReport rep;
  rep.e = f.e();
  rep.semilinear = opt.semilinear;
  rep.shard_count = geo.count();
  rep.candidate_space = geo.count() * order * order * order;
  rep.flag_group_order = rep.candidate_space;
  if (opt.budget != 0 && rep.candidate_space > opt.budget)
    throw BudgetExceeded("exhaustive_flag_stabilizer: candidate space " + std::to_string(rep.candidate_space) +
                         " exceeds budget " + std::to_string(opt.budget));
  rep.probes = default_probes(f);

  std::vector<ShardRecord> done;
  std::ofstream ckpt;
  if (!opt.checkpoint_path.empty()) {
    CheckpointHeader h;
    std::uint64_t valid = 0;
    if (read_checkpoint(opt.checkpoint_path, h, done, &valid)) {
      if (h.e != static_cast<std::uint32_t>(f.e()) || h.semilinear != opt.semilinear || h.shard_count != geo.count())
        throw std::runtime_error("checkpoint: " + opt.checkpoint_path + " belongs to a different scan");
      std::filesystem::resize_file(opt.checkpoint_path, valid);
      ckpt.open(opt.checkpoint_path, std::ios::binary | std::ios::app);
    } else {
      ckpt.open(opt.checkpoint_path, std::ios::binary | std::ios::trunc);
      const std::string hdr = encode_header({static_cast<std::uint32_t>(f.e()), opt.semilinear, geo.count()});
      ckpt.write(hdr.data(), static_cast<std::streamsize>(hdr.size()));
      ckpt.flush();
    }
    if (!ckpt) throw std::runtime_error("checkpoint: cannot write " + opt.checkpoint_path);
  }

  std::vector<char> finished(geo.count(), 0);
  for (const auto& r : done) {
    if (r.shard >= geo.count() || r.rejected_by_probe.size() != rep.probes.size())
      throw std::runtime_error("checkpoint: record does not match this scan");
    finished[r.shard] = 1;
  }
  rep.shards_resumed = done.size();

  std::vector<std::uint32_t> pending;
  for (std::uint32_t s = 0; s < geo.count(); ++s)
    if (!finished[s]) pending.push_back(s);
  if (opt.shard_limit != 0 && pending.size() > opt.shard_limit) pending.resize(opt.shard_limit);

  std::vector<ShardRecord> fresh(pending.size());
  std::mutex ckpt_mu;
  parallel_for(pending.size(), opt.threads, [&](std::size_t i, unsigned) {
    fresh[i] = scan_shard(f, u, rep.probes, geo, pending[i]);
    if (ckpt.is_open()) {
      const std::string bytes = encode_record(fresh[i]);
      std::lock_guard lock(ckpt_mu);
      ckpt.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
      ckpt.flush();
    }
  });

  done.insert(done.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
  std::sort(done.begin(), done.end(), [](const ShardRecord& a, const ShardRecord& b) { return a.shard < b.shard; });

  rep.rejected_by_probe.assign(rep.probes.size(), 0);
  const Felt z{0};
  const Felt o{1};
  for (const auto& r : done) {
    rep.candidates_scanned += r.candidates;
    rep.full_checks += r.full_checks;
    for (std::size_t i = 0; i < r.rejected_by_probe.size(); ++i) rep.rejected_by_probe[i] += r.rejected_by_probe[i];
    int k = 0;
    Felt x22;
    Felt x33;
    geo.decode(r.shard, k, x22, x33);
    for (const auto& s : r.survivors)
      rep.stabilisers.push_back(Collineation{{o, Felt{s[0]}, Felt{s[1]}, z, x22, Felt{s[2]}, z, z, x33}, k});
  }
  std::sort(rep.stabilisers.begin(), rep.stabilisers.end());
  rep.shards_done = done.size();
  rep.complete = rep.shards_done == geo.count();

  rep.all_linear_in_g = std::all_of(rep.stabilisers.begin(), rep.stabilisers.end(),
                                    [&](const Collineation& c) { return c.frob != 0 || as_uv(f, c).has_value(); });
  std::vector<Collineation> expected = opt.semilinear ? g_times_psi(f) : group_g(f);
  std::sort(expected.begin(), expected.end());
  rep.matches_expected_group = rep.stabilisers == expected;
  if (!rep.stabilisers.empty()) rep.orbit_size = rep.flag_group_order / rep.stabilisers.size();
  return rep;
}

}  // namespace btu
