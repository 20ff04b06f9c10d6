/*
Copyright 2026 The procmap Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <thread>

#include "procmap/error.hpp"
#include "procmap/multisection.hpp"

namespace procmap {

namespace {

void sort_by_offset(std::vector<PartitionTask>& leaves) {
  std::sort(leaves.begin(), leaves.end(),
            [](const PartitionTask& a, const PartitionTask& b) { return a.block_offset < b.block_offset; });
}

// Runs `body` on `workers` threads, the calling thread being one of them.
template <typename Body>
void run_workers(int workers, Body&& body) {
  std::vector<std::jthread> helpers;
  helpers.reserve(workers > 0 ? workers - 1 : 0);
  for (int w = 1; w < workers; ++w) helpers.emplace_back(body);
  body();
}

class FirstError {
 public:
  void capture() {
    std::lock_guard lock(mutex_);
    if (!error_) error_ = std::current_exception();
  }
  void rethrow() {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

void naive_descend(PartitionTask task, const TaskExpander& expander, int p, std::vector<PartitionTask>& leaves) {
  if (task.depth == 0) {
    leaves.push_back(std::move(task));
    return;
  }
  for (auto& child : expander.expand(task, p)) naive_descend(std::move(child), expander, p, leaves);
}

}  // namespace

std::vector<PartitionTask> run_naive(PartitionTask root, const TaskExpander& expander, int p) {
  std::vector<PartitionTask> leaves;
  naive_descend(std::move(root), expander, p, leaves);
  sort_by_offset(leaves);
  return leaves;
}

std::vector<PartitionTask> run_layer(PartitionTask root, const TaskExpander& expander, int p) {
  std::vector<PartitionTask> current;
  current.push_back(std::move(root));
  FirstError error;
  while (current.front().depth > 0) {
    const int m = static_cast<int>(current.size());
    const auto a = static_cast<std::size_t>(expander.hierarchy().arity(current.front().depth));
    // Slot j * a + b belongs to child b of task j, so workers never share a slot.
    std::vector<PartitionTask> next(current.size() * a);
    std::atomic<int> cursor{0};
    run_workers(std::min(p, m), [&] {
      for (int j = cursor.fetch_add(1);; j = cursor.fetch_add(1)) {
        expander.counters().cursor_claims.fetch_add(1);
        if (j >= m) break;
        try {
          auto children = expander.expand(current[j], distribute_threads(p, m, j + 1));
          std::move(children.begin(), children.end(), next.begin() + static_cast<std::ptrdiff_t>(j * a));
        } catch (...) {
          error.capture();
        }
      }
    });
    error.rethrow();
    current = std::move(next);
  }
  return current;
}

std::vector<PartitionTask> run_queue(PartitionTask root, const TaskExpander& expander, int p) {
  struct Entry {
    PartitionTask task;
    std::int64_t size;
    std::uint64_t order;
  };
  // Heap top: largest graph, earliest insertion among equals.
  const auto lower_priority = [](const Entry& a, const Entry& b) {
    if (a.size != b.size) return a.size < b.size;
    return a.order > b.order;
  };
  const bool by_edges = expander.options().queue_orders_by_edges;
  const auto size_of = [by_edges](const PartitionTask& t) -> std::int64_t {
    return by_edges ? t.graph->num_edges() : t.graph->num_vertices();
  };

  std::mutex mutex;
  std::condition_variable changed;
  std::vector<Entry> queue;
  std::uint64_t inserted = 0;
  int idle = p;
  std::vector<PartitionTask> solution;
  FirstError error;
  std::vector<std::jthread> running;

  const auto push = [&](PartitionTask task) {
    const auto size = size_of(task);
    queue.push_back({std::move(task), size, inserted++});
    std::push_heap(queue.begin(), queue.end(), lower_priority);
  };
  push(std::move(root));

  {
    std::unique_lock lock(mutex);
    while (true) {
      changed.wait(lock, [&] { return (!queue.empty() && idle > 0) || (queue.empty() && idle == p); });
      if (queue.empty() && idle == p) break;
      const int budget = (idle + static_cast<int>(queue.size()) - 1) / static_cast<int>(queue.size());
      std::pop_heap(queue.begin(), queue.end(), lower_priority);
      PartitionTask task = std::move(queue.back().task);
      queue.pop_back();
      idle -= budget;
      running.emplace_back([&, task = std::move(task), budget] {
        std::vector<PartitionTask> children;
        try {
          children = expander.expand(task, budget);
        } catch (...) {
          error.capture();
          children.clear();
        }
        {
          std::lock_guard guard(mutex);
          if (task.depth == 1) {
            std::move(children.begin(), children.end(), std::back_inserter(solution));
          } else {
            for (auto& child : children) push(std::move(child));
          }
          idle += budget;
        }
        changed.notify_all();
      });
    }
    expander.counters().final_idle_threads.store(idle);
    expander.counters().final_queue_size.store(static_cast<std::int64_t>(queue.size()));
  }
  running.clear();
  error.rethrow();
  sort_by_offset(solution);
  return solution;
}

namespace {

struct NonBlockingState {
  explicit NonBlockingState(const TaskExpander& e) : expander(e) {}

  const TaskExpander& expander;
  std::atomic<std::int64_t> idle{0};
  std::mutex solution_mutex;
  std::vector<PartitionTask> solution;
  FirstError error;
};

void nb_group(std::shared_ptr<const std::vector<PartitionTask>> tasks, std::shared_ptr<std::atomic<std::size_t>> cursor,
              int p, NonBlockingState& state) {
  std::vector<PartitionTask> results;
  for (std::size_t j = cursor->fetch_add(1); j < tasks->size(); j = cursor->fetch_add(1)) {
    p += static_cast<int>(state.idle.exchange(0));
    try {
      auto children = state.expander.expand((*tasks)[j], p);
      std::move(children.begin(), children.end(), std::back_inserter(results));
    } catch (...) {
      state.error.capture();
    }
  }
  const bool last_layer = tasks->front().depth == 1;
  if (last_layer || results.empty()) {
    if (last_layer) {
      std::lock_guard lock(state.solution_mutex);
      std::move(results.begin(), results.end(), std::back_inserter(state.solution));
    }
    state.idle.fetch_add(p);
    return;
  }
  const int m = std::min<int>(p, static_cast<int>(results.size()));
  auto next = std::make_shared<const std::vector<PartitionTask>>(std::move(results));
  auto next_cursor = std::make_shared<std::atomic<std::size_t>>(0);
  std::vector<std::jthread> groups;
  groups.reserve(m - 1);
  for (int i = 2; i <= m; ++i) {
    groups.emplace_back(nb_group, next, next_cursor, distribute_threads(p, m, i), std::ref(state));
  }
  nb_group(next, next_cursor, distribute_threads(p, m, 1), state);
}

}  // namespace

std::vector<PartitionTask> run_nb_layer(PartitionTask root, const TaskExpander& expander, int p) {
  NonBlockingState state(expander);
  auto tasks = std::make_shared<const std::vector<PartitionTask>>(1, std::move(root));
  if (tasks->front().depth == 0) return {tasks->front()};
  nb_group(tasks, std::make_shared<std::atomic<std::size_t>>(0), p, state);
  state.error.rethrow();
  expander.counters().final_idle_threads.store(state.idle.load());
  sort_by_offset(state.solution);
  return std::move(state.solution);
}

}  // namespace procmap
