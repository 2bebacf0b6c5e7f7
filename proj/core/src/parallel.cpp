#include "coreecs/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace coreecs {

std::string render_trace(const RunTrace& trace) {
    std::ostringstream out;
    for (const TraceEntry& entry : trace) {
        out << entry.step << ": " << entry.system << "#" << entry.tag << " applied\n";
    }
    return out.str();
}

namespace {

// All shared data sits behind one exclusive lock: the master state receiving
// every mutation, the fresh counter, and the trace.
struct Engine {
    explicit Engine(const WorldState& start, const RunConfig& cfg_)
        : master(start), counter(start.next_fresh()), cfg(cfg_) {}

    std::mutex lock;
    WorldState master;
    EntityId counter;
    RunConfig cfg;
    RunTrace trace;
    std::size_t steps = 0;

    // Grounds the mutation against the shared counter and applies it to the
    // master state plus every view on the caller's context path. Critical
    // section; the mutation must already be produced.
    void apply(const Mutation& m, const std::vector<WorldState*>& views,
               const std::string& system, const std::vector<int>& region_path,
               std::size_t index_in_region) {
        std::scoped_lock guard(lock);
        Mutation grounded = ground(m, counter);
        for (WorldState* view : views) {
            *view = apply_mutation(*view, grounded).with_next_fresh_at_least(counter);
        }
        if (cfg.trace) {
            std::ostringstream tag;
            for (int step : region_path) tag << step << ".";
            tag << index_in_region;
            trace.push_back(TraceEntry{steps, system, tag.str(), region_path, index_in_region});
        }
        ++steps;
    }

    std::mt19937_64 region_rng(const std::vector<int>& region_path) const {
        std::uint64_t h = cfg.seed ^ 0x9e3779b97f4a7c15ull;
        for (int step : region_path) {
            h = (h ^ static_cast<std::uint64_t>(step + 1)) * 0x100000001b3ull;
        }
        return std::mt19937_64(h);
    }
};

void exec(Engine& engine, const Schedule& z, std::vector<WorldState*> views,
          std::vector<int> path);

void exec_conc(Engine& engine, const SystemPtr& system, const std::vector<WorldState*>& views,
               const std::vector<int>& path) {
    std::vector<EntityMatch> matches;
    {
        std::scoped_lock guard(engine.lock);
        matches = eval_query_vector(*views.back(), system->query);
    }

    std::vector<std::size_t> order(matches.size());
    std::iota(order.begin(), order.end(), 0);
    if (engine.cfg.workers > 1) {
        auto rng = engine.region_rng(path);
        std::shuffle(order.begin(), order.end(), rng);
    }

    auto task = [&](std::size_t index) {
        const EntityMatch& match = matches[order[index]];
        Mutation m = system->func(match);  // outside the guard
        engine.apply(m, views, system->name, path, order[index]);
    };

    std::size_t workers = std::min<std::size_t>(engine.cfg.workers, matches.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < order.size(); ++i) task(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            try {
                for (std::size_t i = next.fetch_add(1); i < order.size(); i = next.fetch_add(1)) {
                    task(i);
                }
            } catch (...) {
                std::scoped_lock guard(failure_lock);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

void exec_seq(Engine& engine, const SystemPtr& system, const std::vector<WorldState*>& views,
              const std::vector<int>& path) {
    std::vector<EntityMatch> matches;
    {
        std::scoped_lock guard(engine.lock);
        matches = eval_query_vector(*views.back(), system->query);
    }
    for (std::size_t i = 0; i < matches.size(); ++i) {
        std::optional<EntityMatch> refreshed;
        {
            // The re-query before each match is its own critical section.
            std::scoped_lock guard(engine.lock);
            refreshed = refresh_match(*system, *views.back(), matches[i].entities);
        }
        if (!refreshed) continue;
        Mutation m = system->func(*refreshed);
        engine.apply(m, views, system->name, path, i);
    }
}

void exec_par(Engine& engine, const Schedule::ParNode& node, std::vector<WorldState*> views,
              const std::vector<int>& path) {
    // Each side queries a snapshot taken on entry, advanced only by its own
    // mutations; the sides' writes still race into the shared state.
    WorldState fork_left = WorldState();
    WorldState fork_right = WorldState();
    {
        std::scoped_lock guard(engine.lock);
        fork_left = *views.back();
        fork_right = *views.back();
    }
    std::vector<WorldState*> views_left = views;
    views_left.push_back(&fork_left);
    std::vector<WorldState*> views_right = views;
    views_right.push_back(&fork_right);

    std::vector<int> path_left = path;
    path_left.push_back(0);
    std::vector<int> path_right = path;
    path_right.push_back(1);

    if (engine.cfg.workers == 1) {
        exec(engine, node.left, views_left, path_left);
        exec(engine, node.right, views_right, path_right);
        return;
    }

    std::exception_ptr failure;
    std::mutex failure_lock;
    auto side = [&](const Schedule& sub, std::vector<WorldState*>& sub_views,
                    std::vector<int>& sub_path) {
        try {
            exec(engine, sub, sub_views, sub_path);
        } catch (...) {
            std::scoped_lock guard(failure_lock);
            if (!failure) failure = std::current_exception();
        }
    };
    std::thread left([&]() { side(node.left, views_left, path_left); });
    std::thread right([&]() { side(node.right, views_right, path_right); });
    left.join();
    right.join();
    if (failure) std::rethrow_exception(failure);
}

void exec(Engine& engine, const Schedule& z, std::vector<WorldState*> views,
          std::vector<int> path) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Schedule::ConcNode>) {
                exec_conc(engine, node.system, views, path);
            } else if constexpr (std::is_same_v<T, Schedule::SeqNode>) {
                exec_seq(engine, node.system, views, path);
            } else if constexpr (std::is_same_v<T, Schedule::ParNode>) {
                exec_par(engine, node, views, path);
            } else {
                std::vector<int> left_path = path;
                left_path.push_back(0);
                std::vector<int> right_path = path;
                right_path.push_back(1);
                // The left side is a synchronization barrier for the right.
                exec(engine, node.left, views, left_path);
                exec(engine, node.right, views, right_path);
            }
        },
        z.node());
}

}  // namespace

RunResult run_parallel(const WorldState& c, const Schedule& z, const RunConfig& cfg) {
    if (cfg.workers < 1) {
        throw RuntimeError("run_parallel needs at least one worker");
    }
    Engine engine(c, cfg);
    std::vector<WorldState*> views{&engine.master};
    try {
        exec(engine, z, views, {});
    } catch (const std::system_error& e) {
        throw RuntimeError(std::string("worker pool failure: ") + e.what());
    }

    RunResult result;
    result.state = engine.master.with_next_fresh_at_least(engine.counter);
    if (cfg.trace) result.trace = std::move(engine.trace);
    return result;
}

}  // namespace coreecs
