#include "steiner/ds_approx.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>
#include <cstdint>

#include "steiner/domset.hpp"

namespace steiner {

namespace {

enum Role : char { kW, kB, kY };

// Per-vertex state kept together so a neighbor update touches one cache line.
struct Slot {
  std::int32_t count_w = 0;   // neighbors in W
  std::int32_t count_bh = 0;  // neighbors in B_h
  std::int32_t queued_key = -1;
  Role role = kW;
  char heavy = 0;
  char touched = 0;
  char listed_wh = 0;  // counted in wh_count_
};

class ApproxRun {
 public:
  ApproxRun(const Graph& g, int d) : g_(g), threshold_(d + 1), slot_(g.num_vertices()) {
    const Vertex n = g.num_vertices();
    std::size_t max_degree = 0;
    for (Vertex v = 0; v < n; ++v) max_degree = std::max(max_degree, g.degree(v));
    bucket_.resize(max_degree + 1);
    nonempty_.assign(max_degree / 64 + 1, 0);
    for (Vertex v = 0; v < n; ++v) {
      if (g.degree(v) == 0) {
        slot_[v].role = kY;
        y_.push_back(v);
        continue;
      }
      slot_[v].count_w = static_cast<std::int32_t>(g.degree(v));
      slot_[v].queued_key = key(v);
      slot_[v].listed_wh = 1;
      ++wh_count_;
      // Ascending ids already form a valid min-heap.
      bucket_[key(v)].push_back(v);
      mark(key(v));
    }
  }

  bool in_wh(Vertex v) const { return slot_[v].role == kW && key(v) > 0; }
  int key(Vertex v) const { return slot_[v].count_w + slot_[v].count_bh; }

  /// Lowest (key, id) vertex of W_h, or -1.
  ///
  /// Every W_h vertex has exactly one live entry whose key is at most its
  /// current key (pushes happen on decrease only). A live entry that surfaces
  /// with a key below the current one is re-pushed; one that matches is the
  /// true minimum, since all other entries are lower bounds above it.
  Vertex pop_min() {
    while (wh_count_ > 0) {
      const int k = lowest_bucket();
      auto& b = bucket_[k];
      std::pop_heap(b.begin(), b.end(), std::greater<>());
      const Vertex v = b.back();
      b.pop_back();
      if (b.empty()) nonempty_[k / 64] &= ~(std::uint64_t{1} << (k % 64));
      if (k != slot_[v].queued_key || !in_wh(v)) continue;
      if (k == key(v)) return v;
      push(v);
    }
    return -1;
  }

  void take_neighbors_of(Vertex v) {
    add_.clear();
    for (Vertex u : g_.neighbors(v))
      if ((slot_[u].role == kB && slot_[u].heavy) || in_wh(u)) add_.push_back(u);

    // Move the whole batch to Y first so the scans below never demote a
    // batch member to B.
    from_w_.clear();
    from_bh_.clear();
    for (Vertex u : add_) {
      Slot& s = slot_[u];
      (s.role == kB ? from_bh_ : from_w_).push_back(u);
      s.role = kY;
      s.heavy = 0;
      touch(u);
      y_.push_back(u);
    }
    demoted_.clear();
    auto demote = [&](Slot& s, Vertex x) {
      touch(x);
      if (s.role == kW) {
        s.role = kB;
        demoted_.push_back(x);
      }
    };
    for_each_neighbor(from_w_, [&](Slot& s, Vertex x) {
      --s.count_w;
      demote(s, x);
    });
    for_each_neighbor(from_bh_, [&](Slot& s, Vertex x) {
      --s.count_bh;
      demote(s, x);
    });
    for_each_neighbor(demoted_, [&](Slot& s, Vertex x) {
      --s.count_w;
      touch(x);
    });

    // Heaviness depends only on the final W-counts.
    gained_.clear();
    lost_.clear();
    for (Vertex x : touched_) {
      Slot& s = slot_[x];
      if (s.role != kB) continue;
      const bool should = s.count_w >= threshold_;
      if (should == static_cast<bool>(s.heavy)) continue;
      s.heavy = should;
      (should ? gained_ : lost_).push_back(x);
    }
    for_each_neighbor(gained_, [&](Slot& s, Vertex y) {
      ++s.count_bh;
      touch(y);
    });
    for_each_neighbor(lost_, [&](Slot& s, Vertex y) {
      --s.count_bh;
      touch(y);
    });
    for (Vertex x : touched_) {
      Slot& s = slot_[x];
      s.touched = 0;
      const bool wh = in_wh(x);
      if (wh != static_cast<bool>(s.listed_wh)) {
        wh_count_ += wh ? 1 : -1;
        s.listed_wh = wh;
        // A vertex (re)entering W_h needs a fresh entry.
        if (wh) s.queued_key = -1;
      }
      if (wh && (s.queued_key < 0 || key(x) < s.queued_key)) push(x);
    }
    touched_.clear();
  }

  // Remaining W vertices join Y; a sweep yields the set already sorted.
  VertexSet finish() const {
    VertexSet y;
    y.reserve(y_.size());
    for (Vertex v = 0; v < g_.num_vertices(); ++v)
      if (slot_[v].role != kB) y.push_back(v);
    return y;
  }

  std::size_t y_size() const { return y_.size(); }

  // Full recomputation check against the definitions.
  void audit(int d, const std::vector<char>& prev_role, const std::vector<char>& prev_bl) const {
    VertexSet y = y_;
    std::sort(y.begin(), y.end());
    DsState s = ds_compute_state(g_, y, d);
    std::vector<char> bh(g_.num_vertices(), 0), wh(g_.num_vertices(), 0);
    for (Vertex v : s.bh) bh[v] = 1;
    for (Vertex v : s.wh) wh[v] = 1;
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      const Slot& sv = slot_[v];
      const bool in_b = std::binary_search(s.b.begin(), s.b.end(), v);
      const bool in_y = std::binary_search(y.begin(), y.end(), v);
      if ((sv.role == kY) != in_y || (sv.role == kB) != in_b) throw std::logic_error("approx audit: role mismatch");
      if (sv.role == kB && static_cast<bool>(sv.heavy) != static_cast<bool>(bh[v]))
        throw std::logic_error("approx audit: heavy mismatch");
      if (sv.role == kW && in_wh(v) != static_cast<bool>(wh[v])) throw std::logic_error("approx audit: W_h mismatch");
      if (in_wh(v)) {
        int expected = 0;
        for (Vertex u : g_.neighbors(v)) expected += bh[u] || wh[u];
        if (expected != key(v)) throw std::logic_error("approx audit: stale key");
        if (sv.queued_key < 0 || sv.queued_key > key(v)) throw std::logic_error("approx audit: heap entry above key");
      }
      if (prev_role[v] == kY && sv.role != kY) throw std::logic_error("approx audit: vertex left Y");
      if (prev_role[v] == kB && sv.role == kW) throw std::logic_error("approx audit: vertex returned to W");
      if (prev_bl[v] && !(sv.role == kB && !sv.heavy)) throw std::logic_error("approx audit: vertex left B_l");
    }
  }

  std::vector<char> roles() const {
    std::vector<char> r(slot_.size());
    for (std::size_t v = 0; v < slot_.size(); ++v) r[v] = slot_[v].role;
    return r;
  }
  std::vector<char> light_mask() const {
    std::vector<char> bl(slot_.size(), 0);
    for (std::size_t v = 0; v < slot_.size(); ++v) bl[v] = slot_[v].role == kB && !slot_[v].heavy;
    return bl;
  }

 private:
  void push(Vertex v) {
    const int k = key(v);
    slot_[v].queued_key = k;
    bucket_[k].push_back(v);
    std::push_heap(bucket_[k].begin(), bucket_[k].end(), std::greater<>());
    mark(k);
  }
  void mark(int k) { nonempty_[k / 64] |= std::uint64_t{1} << (k % 64); }
  // Only called while some bucket holds a live entry.
  int lowest_bucket() const {
    std::size_t w = 0;
    while (nonempty_[w] == 0) ++w;
    return static_cast<int>(w * 64 + std::countr_zero(nonempty_[w]));
  }
  void touch(Vertex x) {
    if (!slot_[x].touched) {
      slot_[x].touched = 1;
      touched_.push_back(x);
    }
  }
  // Calls f(slot, x) for every neighbor x of every vertex in `vs`. The ids
  // are gathered first so slots can be prefetched across list boundaries;
  // on large graphs these scans are bound by cache misses.
  template <class F>
  void for_each_neighbor(const std::vector<Vertex>& vs, F f) {
    constexpr std::size_t kAhead = 16;
    gather_.clear();
    for (Vertex v : vs) {
      auto nb = g_.neighbors(v);
      gather_.insert(gather_.end(), nb.begin(), nb.end());
    }
    const std::size_t len = gather_.size();
    for (std::size_t i = 0; i < len; ++i) {
      if (i + kAhead < len) __builtin_prefetch(&slot_[gather_[i + kAhead]], 1);
      f(slot_[gather_[i]], gather_[i]);
    }
  }

  const Graph& g_;
  int threshold_;
  std::vector<Slot> slot_;
  std::vector<Vertex> touched_, add_;
  std::vector<Vertex> from_w_, from_bh_, demoted_, gained_, lost_, gather_;
  std::size_t wh_count_ = 0;
  VertexSet y_;
  // Bucket k is a min-heap of ids queued with key k; the bitmask marks
  // nonempty buckets.
  std::vector<std::vector<Vertex>> bucket_;
  std::vector<std::uint64_t> nonempty_;
};

}  // namespace

ApproxResult ds_approx(const Graph& g, const ApproxOptions& opts) {
  ApproxResult result;
  result.degeneracy = opts.degeneracy ? *opts.degeneracy : degeneracy_value(g);
  ApproxRun run(g, result.degeneracy);
  std::vector<char> prev_role, prev_bl;
  if (opts.audit) {
    prev_role = run.roles();
    prev_bl = run.light_mask();
    run.audit(result.degeneracy, prev_role, prev_bl);
  }
  for (Vertex v = run.pop_min(); v >= 0; v = run.pop_min()) {
    const int k = run.key(v);
    const std::size_t before = run.y_size();
    run.take_neighbors_of(v);
    if (run.y_size() == before) throw std::logic_error("ds_approx: iteration added no vertex");
    ++result.iterations;
    if (opts.trace) opts.trace(v, k, run.y_size());
    if (opts.audit) {
      run.audit(result.degeneracy, prev_role, prev_bl);
      prev_role = run.roles();
      prev_bl = run.light_mask();
    }
  }
  result.dominating_set = run.finish();
  return result;
}

}  // namespace steiner
