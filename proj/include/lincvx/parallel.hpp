#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "lincvx/cpoint.hpp"

namespace lincvx {

// One evaluated sample of a check. Lower margin is worse.
struct Sample {
  double margin = 0.0;
  CPoint witness;
  std::string context;
};

struct WorstOf {
  std::optional<Sample> worst;
  std::size_t worst_index = 0;
  std::size_t evaluated = 0;
  std::vector<double> margins;  // NaN for skipped samples
};

// Evaluates fn(i) for i in [0, count) over `workers` threads in contiguous
// chunks and keeps the minimum-margin sample. Ties go to the lowest index,
// so the result does not depend on the worker count. fn returns nullopt for
// samples that are skipped.
template <class Fn>
WorstOf worst_over(std::size_t count, unsigned workers, Fn&& fn) {
  WorstOf out;
  out.margins.assign(count, std::numeric_limits<double>::quiet_NaN());
  if (count == 0) return out;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));

  struct Partial {
    std::optional<Sample> worst;
    std::size_t index = 0;
    std::size_t evaluated = 0;
    std::exception_ptr error;
  };
  std::vector<Partial> partials(workers);

  auto run_chunk = [&](unsigned w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    Partial& part = partials[w];
    try {
      for (std::size_t i = begin; i < end; ++i) {
        std::optional<Sample> s = fn(i);
        if (!s) continue;
        ++part.evaluated;
        out.margins[i] = s->margin;
        if (!part.worst || s->margin < part.worst->margin) {
          part.worst = std::move(s);
          part.index = i;
        }
      }
    } catch (...) {
      part.error = std::current_exception();
    }
  };

  if (workers == 1) {
    run_chunk(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run_chunk, w);
    for (auto& t : threads) t.join();
  }

  for (Partial& part : partials) {
    if (part.error) std::rethrow_exception(part.error);
    out.evaluated += part.evaluated;
    if (!part.worst) continue;
    // Chunks are visited in index order, so strict < keeps the lowest index on ties.
    if (!out.worst || part.worst->margin < out.worst->margin) {
      out.worst = std::move(part.worst);
      out.worst_index = part.index;
    }
  }
  return out;
}

}  // namespace lincvx
