#include "limitops/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "limitops/errors.hpp"

namespace limitops
{

namespace
{

std::atomic<int> gThreads{1};

}  // namespace

void setThreadCount(int n)
{
  if (n < 1)
  {
    throw InputError("thread count must be >= 1");
  }
  gThreads = n;
}

int threadCount()
{
  return gThreads;
}

void parallelFor(std::size_t n, const std::function<void(std::size_t)> &fn)
{
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(gThreads.load()), n);
  if (workers <= 1)
  {
    for (std::size_t i = 0; i < n; i++)
    {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex errorMutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; w++)
  {
    pool.emplace_back(
        [&]
        {
          while (true)
          {
            const std::size_t i = next++;
            if (i >= n)
            {
              return;
            }
            try
            {
              fn(i);
            }
            catch (...)
            {
              std::lock_guard lock(errorMutex);
              if (!error)
              {
                error = std::current_exception();
              }
              next = n;
            }
          }
        });
  }
  for (auto &t : pool)
  {
    t.join();
  }
  if (error)
  {
    std::rethrow_exception(error);
  }
}

}  // namespace limitops
