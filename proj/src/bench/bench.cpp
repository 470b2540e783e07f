// Copyright 2026 The sessionkv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "sessionkv/bench/bench.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "sessionkv/kernel/error.hpp"
#include "sessionkv/kernel/message.hpp"

namespace sessionkv {

RetryPolicy RetryPolicy::none() {
  RetryPolicy r;
  r.kind = Kind::kNone;
  r.max_attempts = 0;
  return r;
}

RetryPolicy RetryPolicy::fixed(std::chrono::microseconds interval, std::uint32_t max_attempts) {
  RetryPolicy r;
  r.kind = Kind::kFixed;
  r.interval = interval;
  r.max_attempts = max_attempts;
  return r;
}

RetryPolicy RetryPolicy::exponential(std::chrono::microseconds base, std::chrono::microseconds cap,
                                     std::uint32_t max_attempts) {
  RetryPolicy r;
  r.kind = Kind::kExponential;
  r.interval = base;
  r.cap = cap;
  r.max_attempts = max_attempts;
  return r;
}

std::optional<std::chrono::microseconds> RetryPolicy::delay(std::uint32_t attempt) const {
  if (kind == Kind::kNone || attempt == 0 || attempt > max_attempts) return std::nullopt;
  if (kind == Kind::kFixed) return interval;
  std::chrono::microseconds d = interval;
  for (std::uint32_t i = 1; i < attempt && d < cap; ++i) d *= 2;
  return std::min(d, cap);
}

std::string RetryPolicy::str() const {
  switch (kind) {
    case Kind::kNone:
      return "none";
    case Kind::kFixed:
      return "fixed:" + std::to_string(interval.count()) + ":" + std::to_string(max_attempts);
    case Kind::kExponential:
      return "exp:" + std::to_string(interval.count()) + ":" + std::to_string(cap.count()) + ":" +
             std::to_string(max_attempts);
  }
  return "?";
}

RetryPolicy parse_retry(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  auto num = [&](std::size_t i, std::uint64_t dflt) -> std::uint64_t {
    if (i >= parts.size()) return dflt;
    try {
      std::size_t used = 0;
      const auto v = std::stoull(parts[i], &used);
      if (used != parts[i].size()) throw InvalidArgument("");
      return v;
    } catch (const std::exception&) {
      throw InvalidArgument("bad retry policy `" + text + "`: `" + parts[i] + "` is not a number");
    }
  };
  using us = std::chrono::microseconds;
  const RetryPolicy dflt;
  if (parts.empty()) throw InvalidArgument("empty retry policy");
  if (parts[0] == "none" && parts.size() == 1) return RetryPolicy::none();
  if (parts[0] == "fixed" && parts.size() <= 3) {
    return RetryPolicy::fixed(us(num(1, dflt.interval.count())),
                              static_cast<std::uint32_t>(num(2, dflt.max_attempts)));
  }
  if (parts[0] == "exp" && parts.size() <= 4) {
    return RetryPolicy::exponential(us(num(1, 10)), us(num(2, dflt.cap.count())),
                                    static_cast<std::uint32_t>(num(3, dflt.max_attempts)));
  }
  throw InvalidArgument("unknown retry policy `" + text + "` (expected none, fixed[:us[:n]] or exp[:us[:cap[:n]]])");
}

double throughput(const std::vector<std::uint64_t>& ops, const std::vector<double>& seconds) {
  double sum = 0;
  for (std::size_t w = 0; w < ops.size() && w < seconds.size(); ++w) {
    if (seconds[w] > 0) sum += static_cast<double>(ops[w]) / seconds[w];
  }
  return sum;
}

std::optional<std::uint64_t> peak_resident_bytes() {
  std::ifstream in("/proc/self/status");
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("VmHWM:", 0) == 0) {
      std::istringstream ls(line.substr(6));
      std::uint64_t kb = 0;
      if (ls >> kb) return kb * 1024;
    }
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double micros(Clock::duration d) { return std::chrono::duration<double, std::micro>(d).count(); }

struct ServiceSample {
  std::uint32_t client;
  std::uint32_t seq;
  double service_us;
};

struct Layout {
  std::size_t replicas;
  std::size_t replica_endpoint(ReplicaId r) const { return r.value - 1; }
  std::size_t client_endpoint(ClientId c) const { return replicas + c.value - 1; }
};

template <Protocol P>
class ReplicaNode {
 public:
  ReplicaNode(const P& p, ReplicaId id, Transport& t, Layout layout, const RetryPolicy& retry)
      : p_(p), id_(id), t_(t), layout_(layout), retry_(retry), state_(p.replica_init(id, Value{0})) {}

  void deliver(const Bytes& datagram, Clock::time_point now) {
    WireMessage m;
    try {
      m = decode_wire(datagram);
    } catch (const DecodeError&) {
      ++dropped_;
      return;
    }
    if (try_serve(m)) return;
    if (auto d = retry_.delay(1)) {
      pending_.push_back(Pending{std::move(m), 0, now + *d});
    } else {
      ++dropped_;
    }
  }

  /// Re-checks due messages, or every pending message when `force`. Returns
  /// whether any was served.
  bool recheck(Clock::time_point now, bool force) {
    bool served = false;
    for (auto it = pending_.begin(); it != pending_.end();) {
      if (!force && it->due > now) {
        ++it;
        continue;
      }
      ++it->attempts;
      ++retries_;
      if (try_serve(it->msg)) {
        served = true;
        it = pending_.erase(it);
        continue;
      }
      if (auto d = retry_.delay(it->attempts + 1)) {
        it->due = now + *d;
        ++it;
      } else {
        ++dropped_;
        it = pending_.erase(it);
      }
    }
    return served;
  }

  [[nodiscard]] std::optional<Clock::time_point> next_due() const {
    std::optional<Clock::time_point> out;
    for (const auto& x : pending_) {
      if (!out || x.due < *out) out = x.due;
    }
    return out;
  }

  [[nodiscard]] bool has_pending() const { return !pending_.empty(); }

  std::uint64_t retries_ = 0;
  std::uint64_t dropped_ = 0;
  std::uint64_t applied_ = 0;
  std::vector<ServiceSample> samples_;

 private:
  struct Pending {
    WireMessage msg;
    std::uint32_t attempts;
    Clock::time_point due;
  };

  bool try_serve(const WireMessage& m) {
    using GP = typename P::GetPayload;
    using PP = typename P::PutPayload;
    if (const auto* g = std::get_if<GetRequest<Bytes>>(&m)) {
      const GP payload = from_bytes<GP>(g->payload);
      const auto t0 = Clock::now();
      if (!p_.get_guard(g->key, payload, g->from, id_, state_)) return false;
      auto served = p_.get(g->key, payload, g->from, id_, std::move(state_));
      state_ = std::move(served.state);
      const auto t1 = Clock::now();
      samples_.push_back(ServiceSample{g->from.value, g->op.sequence, micros(t1 - t0)});
      t_.send(layout_.client_endpoint(g->from),
              encode_wire(GetResponse<Bytes>{id_, g->from, g->op, g->key, served.value, to_bytes(served.payload)}));
      return true;
    }
    if (const auto* x = std::get_if<PutRequest<Bytes>>(&m)) {
      const PP payload = from_bytes<PP>(x->payload);
      if (!p_.put_guard(x->key, x->value, payload, x->from, id_, state_)) return false;
      // Safety: nothing is applied unless its guard holds right now.
      SESSIONKV_EXPECTS(p_.put_guard(x->key, x->value, payload, x->from, id_, state_),
                        "put applied without its guard");
      state_ = p_.put(x->key, x->value, payload, x->from, id_, std::move(state_));
      ++applied_;
      return true;
    }
    ++dropped_;  // responses are never addressed to replicas
    return true;
  }

  const P& p_;
  ReplicaId id_;
  Transport& t_;
  Layout layout_;
  RetryPolicy retry_;
  typename P::ReplicaState state_;
  std::deque<Pending> pending_;
};

template <Protocol P>
class WorkerNode {
 public:
  WorkerNode(const P& p, ClientId id, ReplicaId bound, Transport& t, Layout layout, const OpList& ops)
      : p_(p), id_(id), bound_(bound), t_(t), layout_(layout), ops_(ops), state_(p.client_init(id)) {}

  /// Sends op `i`. Puts complete here; gets wait for await_response.
  void issue(std::size_t i) {
    const Op& op = ops_[i];
    const OpId opid{id_, static_cast<std::uint32_t>(i + 1)};
    started_ = Clock::now();
    if (op.kind == OpKind::kPut) {
      auto rq = p_.put_req(op.key, op.value, id_, std::move(state_));
      state_ = std::move(rq.state);
      const Bytes payload = to_bytes(rq.payload);
      for (std::uint32_t r = 1; r <= layout_.replicas; ++r) {
        t_.send(layout_.replica_endpoint(ReplicaId{r}),
                encode_wire(PutRequest<Bytes>{id_, ReplicaId{r}, op.key, op.value, payload}));
      }
      finish(std::nullopt);
      ++depth_;
      return;
    }
    auto rq = p_.get_req(op.key, id_, std::move(state_));
    state_ = std::move(rq.state);
    waiting_ = opid;
    t_.send(layout_.replica_endpoint(bound_),
            encode_wire(GetRequest<Bytes>{id_, bound_, opid, op.key, to_bytes(rq.payload)}));
  }

  [[nodiscard]] bool waiting() const { return waiting_.has_value(); }

  /// Consumes one datagram; returns true if it completed the pending get.
  bool on_datagram(const Bytes& datagram) {
    WireMessage m;
    try {
      m = decode_wire(datagram);
    } catch (const DecodeError&) {
      return false;
    }
    const auto* r = std::get_if<GetResponse<Bytes>>(&m);
    if (r == nullptr || !waiting_ || r->op != *waiting_) return false;
    using RP = typename P::ResPayload;
    state_ = p_.get_res(r->key, r->value, from_bytes<RP>(r->payload), id_, std::move(state_));
    const std::uint32_t seq = waiting_->sequence;
    waiting_.reset();
    const double lat = finish(r->value);
    gets_.push_back(GetSample{id_.value - 1, depth_, lat, 0});
    get_seq_.push_back(seq);
    return true;
  }

  std::uint64_t done_ = 0;
  double busy_seconds_ = 0;
  std::vector<double> latencies_;
  std::vector<GetSample> gets_;
  std::vector<std::uint32_t> get_seq_;
  std::vector<std::optional<Value>> outcomes_;

 private:
  double finish(std::optional<Value> v) {
    const auto d = Clock::now() - started_;
    const double lat = micros(d);
    busy_seconds_ += std::chrono::duration<double>(d).count();
    latencies_.push_back(lat);
    outcomes_.push_back(v);
    ++done_;
    return lat;
  }

  const P& p_;
  ClientId id_;
  ReplicaId bound_;
  Transport& t_;
  Layout layout_;
  const OpList& ops_;
  typename P::ClientState state_;
  std::optional<OpId> waiting_;
  std::uint32_t depth_ = 0;
  Clock::time_point started_;
};

template <Protocol P>
void run_free(const BenchConfig& cfg, const std::vector<OpList>& work, Transport& t, Layout layout,
              std::vector<std::unique_ptr<ReplicaNode<P>>>& replicas,
              std::vector<std::unique_ptr<WorkerNode<P>>>& workers, std::vector<double>& worker_seconds,
              bool& stalled) {
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(cfg.wall_cap_seconds));
  std::atomic<bool> stop{false};
  std::atomic<bool> hit_cap{false};
  std::mutex err_mu;
  std::exception_ptr err;
  auto fail = [&](std::exception_ptr e) {
    std::lock_guard<std::mutex> lock(err_mu);
    if (!err) err = e;
    stop = true;
  };

  std::vector<std::thread> replica_threads;
  for (std::size_t r = 0; r < replicas.size(); ++r) {
    replica_threads.emplace_back([&, r] {
      try {
        ReplicaNode<P>& node = *replicas[r];
        while (!stop.load(std::memory_order_relaxed)) {
          auto now = Clock::now();
          node.recheck(now, false);
          auto wait = std::chrono::microseconds(2000);
          if (auto due = node.next_due()) {
            wait = std::clamp(std::chrono::duration_cast<std::chrono::microseconds>(*due - now),
                              std::chrono::microseconds(0), wait);
          }
          if (auto d = t.receive(r, wait)) node.deliver(*d, Clock::now());
        }
      } catch (...) {
        fail(std::current_exception());
      }
    });
  }

  std::vector<std::thread> worker_threads;
  for (std::size_t w = 0; w < workers.size(); ++w) {
    worker_threads.emplace_back([&, w] {
      const auto start = Clock::now();
      try {
        WorkerNode<P>& node = *workers[w];
        const std::size_t self = layout.client_endpoint(ClientId{static_cast<std::uint32_t>(w + 1)});
        for (std::size_t i = 0; i < work[w].size() && !stop; ++i) {
          if (Clock::now() > deadline) {
            hit_cap = true;
            break;
          }
          node.issue(i);
          while (node.waiting() && !stop) {
            if (Clock::now() > deadline) {
              hit_cap = true;
              break;
            }
            if (auto d = t.receive(self, std::chrono::microseconds(1000))) node.on_datagram(*d);
          }
          if (node.waiting()) break;
        }
      } catch (...) {
        fail(std::current_exception());
      }
      worker_seconds[w] = std::chrono::duration<double>(Clock::now() - start).count();
    });
  }
  for (auto& th : worker_threads) th.join();
  stop = true;
  for (auto& th : replica_threads) th.join();
  if (err) std::rethrow_exception(err);
  stalled = hit_cap.load();
}

template <Protocol P>
void run_lockstep(const BenchConfig& cfg, const std::vector<OpList>& work, Transport& t, Layout layout,
                  std::vector<std::unique_ptr<ReplicaNode<P>>>& replicas,
                  std::vector<std::unique_ptr<WorkerNode<P>>>& workers, std::vector<double>& worker_seconds,
                  bool& stalled) {
  const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                           std::chrono::duration<double>(cfg.wall_cap_seconds));
  auto pump = [&] {
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t r = 0; r < replicas.size(); ++r) {
        while (auto d = t.receive(r, std::chrono::microseconds(0))) {
          replicas[r]->deliver(*d, Clock::now());
          progress = true;
        }
      }
      for (auto& node : replicas) {
        if (node->has_pending() && node->recheck(Clock::now(), true)) progress = true;
      }
    }
  };

  std::size_t longest = 0;
  for (const auto& ops : work) longest = std::max(longest, ops.size());
  for (std::size_t i = 0; i < longest && !stalled; ++i) {
    for (std::size_t w = 0; w < workers.size() && !stalled; ++w) {
      if (i >= work[w].size()) continue;
      if (Clock::now() > deadline) {
        stalled = true;
        break;
      }
      WorkerNode<P>& node = *workers[w];
      node.issue(i);
      pump();
      if (!node.waiting()) continue;
      const std::size_t self = layout.client_endpoint(ClientId{static_cast<std::uint32_t>(w + 1)});
      while (node.waiting()) {
        auto d = t.receive(self, std::chrono::microseconds(0));
        if (!d) break;
        node.on_datagram(*d);
      }
      // Every message has been delivered: a get still waiting can never finish.
      if (node.waiting()) stalled = true;
    }
  }
  for (std::size_t w = 0; w < workers.size(); ++w) worker_seconds[w] = workers[w]->busy_seconds_;
}

template <Protocol P>
BenchReport run_with(const P& p, const BenchConfig& cfg) {
  const auto work = generate_workload(cfg.workload);
  const auto W = cfg.workload.num_workers;
  const Layout layout{cfg.replicas};
  auto transport = make_transport(cfg.transport, cfg.replicas + W);

  std::vector<std::unique_ptr<ReplicaNode<P>>> replicas;
  for (std::uint32_t r = 1; r <= cfg.replicas; ++r) {
    replicas.push_back(std::make_unique<ReplicaNode<P>>(p, ReplicaId{r}, *transport, layout, cfg.retry));
  }
  std::vector<std::unique_ptr<WorkerNode<P>>> workers;
  for (std::uint32_t w = 0; w < W; ++w) {
    // Round-robin binding of workers to replicas.
    const ReplicaId bound{w % cfg.replicas + 1};
    workers.push_back(std::make_unique<WorkerNode<P>>(p, ClientId{w + 1}, bound, *transport, layout, work[w]));
  }

  BenchReport rep;
  rep.config = cfg;
  rep.worker_seconds.assign(W, 0.0);
  if (cfg.ordering == Ordering::kFree) {
    run_free<P>(cfg, work, *transport, layout, replicas, workers, rep.worker_seconds, rep.stalled);
  } else {
    run_lockstep<P>(cfg, work, *transport, layout, replicas, workers, rep.worker_seconds, rep.stalled);
  }

  std::map<std::pair<std::uint32_t, std::uint32_t>, double> service;
  for (const auto& r : replicas) {
    rep.retries += r->retries_;
    rep.dropped += r->dropped_;
    for (const auto& s : r->samples_) service[{s.client, s.seq}] = s.service_us;
  }
  rep.dropped += transport->dropped();
  for (const auto& w : workers) {
    rep.worker_ops.push_back(w->done_);
    rep.latencies_us.insert(rep.latencies_us.end(), w->latencies_.begin(), w->latencies_.end());
    for (std::size_t i = 0; i < w->gets_.size(); ++i) {
      GetSample g = w->gets_[i];
      auto it = service.find({g.worker + 1, w->get_seq_[i]});
      if (it != service.end()) g.service_us = it->second;
      rep.gets.push_back(g);
    }
    rep.outcomes.push_back(w->outcomes_);
  }
  rep.throughput_ops_s = throughput(rep.worker_ops, rep.worker_seconds);
  if (!rep.latencies_us.empty()) {
    rep.p50_us = percentile(rep.latencies_us, 0.50);
    rep.p95_us = percentile(rep.latencies_us, 0.95);
    rep.p99_us = percentile(rep.latencies_us, 0.99);
  }
  rep.peak_mem_bytes = peak_resident_bytes();
  return rep;
}

}  // namespace

BenchReport run_bench(const BenchConfig& cfg) {
  cfg.workload.validate();
  if (cfg.replicas == 0) throw InvalidArgument("at least one replica is required");
  if (!(cfg.wall_cap_seconds > 0)) throw InvalidArgument("wall cap must be positive");
  const Domain d{cfg.workload.num_workers, cfg.replicas, cfg.workload.key_range, cfg.workload.val_range};
  const ProtocolDefinition def = make_protocol_or_default(cfg.protocol, cfg.store, d, cfg.labeling);
  return def.visit([&](const auto& p) { return run_with(p, cfg); });
}

DepthRegression depth_regression(const std::vector<GetSample>& gets) {
  std::map<std::uint32_t, std::vector<double>> by_depth;
  for (const auto& g : gets) by_depth[g.depth].push_back(g.service_us);
  DepthRegression out;
  std::vector<double> xs;
  std::vector<double> ys;
  for (auto& [depth, samples] : by_depth) {
    const double m = median(samples);
    out.points.emplace_back(depth, m);
    xs.push_back(depth);
    ys.push_back(m);
  }
  out.fit = fit_line(xs, ys);
  return out;
}

DepthRegression chain_depth_regression(const BenchConfig& cfg) { return depth_regression(run_bench(cfg).gets); }

}  // namespace sessionkv
