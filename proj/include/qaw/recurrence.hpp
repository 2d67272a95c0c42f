#pragma once

// Three-term recurrences p_{k+1} = (alpha_k x + beta_k) p_k - gamma_k p_{k-1},
// with p_{-1} = 0 and p_0 = 1.

#include "qaw/scalar.hpp"

namespace qaw {

template <class T>
struct RecurrenceStep {
  T alpha;
  T beta;
  T gamma;
};

/// A family defined by its step coefficients. `Steps` maps k to RecurrenceStep<T>.
template <class T, class Steps>
struct RecurrenceSpec {
  Steps steps;

  T operator()(int n, const T& x) const {
    T prev(0);
    T cur(1);
    for (int k = 0; k < n; ++k) {
      const RecurrenceStep<T> s = steps(k);
      T next = (s.alpha * x + s.beta) * cur - s.gamma * prev;
      prev = std::move(cur);
      cur = std::move(next);
    }
    return cur;
  }

  /// p_0(x), ..., p_n(x).
  Vector<T> sequence(int n, const T& x) const {
    Vector<T> out(n + 1);
    T prev(0);
    T cur(1);
    out(0) = cur;
    for (int k = 0; k < n; ++k) {
      const RecurrenceStep<T> s = steps(k);
      T next = (s.alpha * x + s.beta) * cur - s.gamma * prev;
      prev = std::move(cur);
      cur = std::move(next);
      out(k + 1) = cur;
    }
    return out;
  }
};

template <class T, class Steps>
RecurrenceSpec<T, Steps> make_recurrence(Steps steps) {
  return RecurrenceSpec<T, Steps>{std::move(steps)};
}

}  // namespace qaw
