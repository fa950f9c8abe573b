#include "pwc/parallel.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>
#include <vector>

namespace pwc {

int worker_count() {
  static const int cached = [] {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n <= 0) n = 1;
    if (const char* env = std::getenv("PWC_THREADS")) {
      const int cap = std::atoi(env);
      if (cap >= 1 && cap < n) n = cap;
    }
    return n;
  }();
  return cached;
}

namespace {

// Minimal persistent pool; jobs pull chunk indices from a shared counter.
class Pool {
 public:
  explicit Pool(int workers) {
    for (int i = 0; i < workers; ++i) {
      threads_.emplace_back([this] { worker_loop(); });
    }
  }

  ~Pool() {
    {
      std::lock_guard<std::mutex> lock(mutex_);
      stopping_ = true;
    }
    wake_.notify_all();
    for (std::thread& t : threads_) t.join();
  }

  void run(int count, const std::function<void(int)>& body) {
    std::unique_lock<std::mutex> lock(mutex_);
    body_ = &body;
    next_.store(0);
    total_ = count;
    pending_ = static_cast<int>(threads_.size());
    ++generation_;
    wake_.notify_all();
    done_.wait(lock, [this] { return pending_ == 0; });
    body_ = nullptr;
  }

 private:
  void worker_loop() {
    long seen = 0;
    for (;;) {
      const std::function<void(int)>* body;
      {
        std::unique_lock<std::mutex> lock(mutex_);
        wake_.wait(lock, [&] { return stopping_ || generation_ != seen; });
        if (stopping_) return;
        seen = generation_;
        body = body_;
      }
      for (;;) {
        const int i = next_.fetch_add(1);
        if (i >= total_) break;
        (*body)(i);
      }
      {
        std::lock_guard<std::mutex> lock(mutex_);
        if (--pending_ == 0) done_.notify_all();
      }
    }
  }

  std::vector<std::thread> threads_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(int)>* body_ = nullptr;
  std::atomic<int> next_{0};
  int total_ = 0;
  int pending_ = 0;
  long generation_ = 0;
  bool stopping_ = false;
};

}  // namespace

namespace {
thread_local bool g_inside_parallel = false;
}

void parallel_for(int count, const std::function<void(int)>& body) {
  if (count <= 0) return;
  const int workers = worker_count();
  if (workers == 1 || count == 1 || g_inside_parallel) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr failure = nullptr;
  std::mutex failure_mutex;
  const std::function<void(int)> guarded = [&](int i) {
    g_inside_parallel = true;
    try {
      body(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
    g_inside_parallel = false;
  };
  static Pool pool(worker_count());
  static std::mutex serialize;  // one parallel region at a time
  {
    std::lock_guard<std::mutex> lock(serialize);
    pool.run(count, guarded);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace pwc
