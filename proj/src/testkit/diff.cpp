#include "hardattn/testkit/diff.hpp"

#include <algorithm>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "hardattn/core/error.hpp"

namespace hardattn::testkit {

std::uint64_t count_words(std::size_t k, std::size_t max_len) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 0;
  std::uint64_t layer = 1;
  for (std::size_t len = 1; len <= max_len; ++len) {
    if (k != 0 && layer > kMax / k) return kMax;
    layer *= k;
    if (total > kMax - layer) return kMax;
    total += layer;
  }
  return total;
}

void for_each_word(std::size_t k, std::size_t max_len, const std::function<void(const Word&)>& fn) {
  if (k == 0) return;
  for (std::size_t len = 1; len <= max_len; ++len) {
    Word w(len, 0);
    while (true) {
      fn(w);
      std::size_t p = len;
      while (p > 0 && w[p - 1] + 1 == k) w[--p] = 0;
      if (p == 0) break;
      ++w[p - 1];
    }
  }
}

Word word_at(std::size_t k, std::size_t length, std::uint64_t index) {
  Word w(length, 0);
  for (std::size_t p = length; p-- > 0;) {
    w[p] = static_cast<Symbol>(index % k);
    index /= k;
  }
  return w;
}

namespace {

bool length_lex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string show(const Alphabet& alphabet, const Word& w) {
  std::string s = alphabet.format_word(w);
  return s.empty() ? "(empty)" : s;
}

}  // namespace

std::string DiffReport::summary(const Alphabet& alphabet) const {
  std::ostringstream out;
  out << mismatch_count << " mismatches (" << checked << " strings, length <= " << bound << ")";
  for (const auto& m : mismatches)
    out << "\n  " << show(alphabet, m.word) << ": " << lhs_name << "=" << (m.lhs ? 1 : 0) << " " << rhs_name << "="
        << (m.rhs ? 1 : 0);
  return out.str();
}

DiffReport diff_languages(const Recognizer& a, const Recognizer& b, const Alphabet& alphabet, std::size_t bound,
                          const DiffOptions& options) {
  if (bound == 0) throw Error("diff bound must be at least 1");
  std::size_t k = alphabet.size();
  if (k == 0) throw Error("diff over an empty alphabet");
  std::uint64_t total = count_words(k, bound);
  if (total > options.max_strings)
    throw Error("diff would enumerate " + std::to_string(total) + " strings (limit " +
                std::to_string(options.max_strings) + ")");

  DiffReport report;
  report.lhs_name = options.lhs_name;
  report.rhs_name = options.rhs_name;
  report.bound = bound;
  report.checked = total;

  std::size_t jobs = std::max<std::size_t>(1, options.jobs);
  std::mutex lock;
  std::vector<Mismatch> found;
  std::uint64_t count = 0;
  std::exception_ptr failure;

  auto worker = [&](std::size_t id) {
    std::vector<Mismatch> local;
    std::uint64_t local_count = 0;
    try {
      std::uint64_t per_len = 1;
      for (std::size_t len = 1; len <= bound; ++len) {
        per_len *= k;
        for (std::uint64_t idx = id; idx < per_len; idx += jobs) {
          Word w = word_at(k, len, idx);
          bool x = a(w);
          bool y = b(w);
          if (x == y) continue;
          ++local_count;
          if (local.size() < options.max_reported) local.push_back({w, x, y});
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> g(lock);
      if (!failure) failure = std::current_exception();
    }
    std::lock_guard<std::mutex> g(lock);
    count += local_count;
    found.insert(found.end(), local.begin(), local.end());
  };

  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t id = 0; id < jobs; ++id) threads.emplace_back(worker, id);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::sort(found.begin(), found.end(), [](const Mismatch& x, const Mismatch& y) { return length_lex_less(x.word, y.word); });
  if (found.size() > options.max_reported) found.resize(options.max_reported);
  report.mismatches = std::move(found);
  report.mismatch_count = count;
  return report;
}

StutterResult stutter_invariant_up_to(const Recognizer& l, const Alphabet& alphabet, std::size_t bound) {
  StutterResult result;
  bool done = false;
  for_each_word(alphabet.size(), bound, [&](const Word& w) {
    if (done) return;
    bool in = l(w);
    for (std::size_t p = 0; p < w.size() && !done; ++p) {
      Word longer = w;
      longer.insert(longer.begin() + static_cast<std::ptrdiff_t>(p), w[p]);
      ++result.checked;
      bool long_in = l(longer);
      if (long_in == in) continue;
      StutterWitness wit;
      wit.u.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(p));
      wit.a = w[p];
      wit.v.assign(w.begin() + static_cast<std::ptrdiff_t>(p) + 1, w.end());
      wit.short_in = in;
      wit.long_in = long_in;
      result.invariant = false;
      result.witness = std::move(wit);
      done = true;
    }
  });
  return result;
}

std::string describe(const StutterWitness& w, const Alphabet& alphabet) {
  auto text = [&](const Word& x) { return x.empty() ? std::string("ε") : alphabet.format_word(x); };
  Word shorter = w.u;
  shorter.push_back(w.a);
  shorter.insert(shorter.end(), w.v.begin(), w.v.end());
  Word longer = w.u;
  longer.push_back(w.a);
  longer.push_back(w.a);
  longer.insert(longer.end(), w.v.begin(), w.v.end());
  std::ostringstream out;
  out << "u=" << text(w.u) << " a=" << alphabet.symbol(w.a) << " v=" << text(w.v) << ": \"" << text(shorter)
      << "\" " << (w.short_in ? "in" : "not in") << " L, \"" << text(longer) << "\" "
      << (w.long_in ? "in" : "not in") << " L";
  return out.str();
}

}  // namespace hardattn::testkit
