// SPDX-License-Identifier: MIT
#include <doctest.h>

#include "oracles.hpp"
#include "ymx/errors.hpp"
#include "ymx/montecarlo.hpp"
#include "ymx/tensor_network.hpp"
#include "ymx/weingarten.hpp"

using namespace ymx;

namespace {

Word word(std::initializer_list<std::pair<int, int>> letters) {
  Word w;
  for (auto [id, e] : letters) w.push_back({id, e});
  return w;
}

WordSpec spec_of(std::vector<Word> words, std::vector<HighestWeight> labels) {
  WordSpec s;
  s.words = std::move(words);
  s.labels = std::move(labels);
  return s;
}

}  // namespace

TEST_CASE("small Weingarten values") {
  for (int N = 1; N <= 5; ++N) CHECK(wg({1}, N) == Rational(1, N));
  for (int N = 2; N <= 5; ++N) {
    CHECK(wg({1, 1}, N) == Rational(1, N * N - 1));
    CHECK(wg({2}, N) == Rational(-1, N * (N * N - 1)));
  }
}

TEST_CASE("Weingarten equals the exact pseudoinverse of the Gram matrix") {
  for (int n = 1; n <= 3; ++n) {
    const auto perms = all_permutations(n);
    for (int N = 1; N <= 4; ++N) {
      const auto pinv = oracle::pseudoinverse(oracle::gram_matrix(n, N));
      for (std::size_t i = 0; i < perms.size(); ++i)
        for (std::size_t j = 0; j < perms.size(); ++j)
          CHECK(pinv[i][j] == wg_table(n, N).value(perms[i].inverse().compose(perms[j])));
    }
  }
}

TEST_CASE("entrywise moments") {
  // E|U11|^4 = 2 / (N (N+1)) at N = 2
  CHECK(entrywise_moment({{0, 0}, {0, 0}}, {{0, 0}, {0, 0}}, 2) == Rational(1, 3));
  CHECK(entrywise_moment({{0, 0}}, {{0, 0}}, 3) == Rational(1, 3));
  CHECK(entrywise_moment({{0, 0}}, {}, 3) == 0);
}

TEST_CASE("word integrals") {
  const auto x = word({{0, 1}});
  const auto xi = word({{0, -1}});
  for (int N = 1; N <= 3; ++N) {
    CHECK(character_word_integral(spec_of({x}, {HighestWeight::fundamental(N)})).exact == 0);
    CHECK(character_word_integral(spec_of({x, xi}, {HighestWeight::fundamental(N), HighestWeight::fundamental(N)})).exact ==
          1);
  }
  const auto comm = word({{0, 1}, {1, 1}, {0, -1}, {1, -1}});
  for (int N = 2; N <= 3; ++N) {
    // Frobenius: int chi([x, y]) = 1 / d
    const auto r = character_word_integral(spec_of({comm}, {HighestWeight({1}, {1}, N)}));
    CHECK(r.is_exact);
    CHECK(r.exact == Rational(1, N * N - 1));
    const auto n = moment_network_integral(spec_of({comm}, {HighestWeight({1}, {1}, N)}));
    CHECK(n.value == doctest::Approx(1.0 / (N * N - 1)).epsilon(1e-10));
  }
  CHECK(character_word_integral(spec_of({x, xi}, {HighestWeight({2, 1}, {}, 3), HighestWeight({1, 1, 1}, {}, 3)})).exact == 0);
  // labels whose symmetric-group irreducible is not one dimensional
  for (int N = 2; N <= 3; ++N) {
    for (const auto& lam : {HighestWeight({2, 1}, {}, N), HighestWeight({}, {2, 1}, N)}) {
      const auto spec = spec_of({x, xi}, {lam, lam});
      CHECK(character_word_integral(spec).exact == 1);
      CHECK(moment_network_integral(spec).value == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("fundamental labels reduce to classical trace moments") {
  // E|Tr U|^4 = 2 for N >= 2
  const auto x = word({{0, 1}});
  const auto xi = word({{0, -1}});
  for (int N = 2; N <= 4; ++N) {
    const auto f = HighestWeight::fundamental(N);
    CHECK(character_word_integral(spec_of({x, x, xi, xi}, {f, f, f, f})).exact == 2);
  }
  const auto f1 = HighestWeight::fundamental(1);
  CHECK(character_word_integral(spec_of({x, x, xi, xi}, {f1, f1, f1, f1})).exact == 1);
}

TEST_CASE("validation rejects malformed specs") {
  const auto bad = word({{0, 1}, {0, -1}});
  CHECK_THROWS_AS(validate(spec_of({bad}, {HighestWeight::fundamental(2)})), ValidationError);
  CHECK_THROWS_AS(validate(spec_of({word({{0, 1}})}, {})), ValidationError);
  CHECK_THROWS_AS(
      validate(spec_of({word({{0, 1}}), word({{0, -1}})}, {HighestWeight::fundamental(2), HighestWeight::fundamental(3)})),
      ValidationError);
}

TEST_CASE("forbidden matchings vanish after projector resummation") {
  const auto comm = word({{0, 1}, {1, 1}, {0, -1}, {1, -1}});
  for (int N : {2, 3}) {
    LayoutOptions lo;
    lo.insert_at_every_position = true;
    const auto layout = build_layout(spec_of({comm}, {HighestWeight({1}, {1}, N)}), lo);
    std::vector<int> radix;
    long total_tau = 1;
    for (const auto& [i, r] : layout.sites) {
      radix.push_back(static_cast<int>(layout.expansions[i].size()));
      total_tau *= radix.back();
    }
    const int letters = static_cast<int>(layout.plus.size());
    std::vector<int> sigma(letters, 0);
    int forbidden = 0, others_nonzero = 0;
    while (true) {
      std::vector<int> haar(layout.num_vars, -1);
      bool hypothesis = false;
      for (int a = 0; a < letters; ++a) {
        const auto& pairs = letter_pairings(static_cast<int>(layout.plus[a].size()));
        const auto& p = pairs[sigma[a]];
        haar_partners(layout, a, p, haar);
        for (int t = 0; t < static_cast<int>(layout.plus[a].size()); ++t) {
          if (p.alpha(t) != p.beta(t)) continue;
          const auto& xp = layout.occurrences[layout.plus[a][t]];
          const auto& xm = layout.occurrences[layout.minus[a][p.alpha(t)]];
          if (xp.word == xm.word && xp.position == xm.position) hypothesis = true;
        }
      }
      Rational k = 0;
      for (long t = 0; t < total_tau; ++t) {
        std::vector<int> tau(radix.size());
        long idx = t;
        Rational c = 1;
        for (long s = static_cast<long>(radix.size()) - 1; s >= 0; --s) {
          tau[s] = static_cast<int>(idx % radix[s]);
          idx /= radix[s];
          c *= layout.expansions[layout.sites[s].first][tau[s]].second;
        }
        k += c * rational_pow(Rational(N), index_cycles(gadget_partners(layout, tau), haar));
      }
      if (hypothesis) {
        ++forbidden;
        CHECK(k == 0);
      } else if (k != 0) {
        ++others_nonzero;
      }
      int a = letters - 1;
      while (a >= 0 && ++sigma[a] == static_cast<int>(letter_pairings(static_cast<int>(layout.plus[a].size())).size()))
        sigma[a--] = 0;
      if (a < 0) break;
    }
    CHECK(forbidden > 0);
    CHECK(others_nonzero > 0);
  }
}

TEST_CASE("Haar moment tensor matches entrywise moments") {
  const auto t = haar_moment_tensor(1, 2);
  // legs (plain row, conj row, plain col, conj col)
  CHECK(t->data[0] == doctest::Approx(0.5));
  CHECK(t->data[1] == doctest::Approx(0.0));
  CHECK(t->data[(1 * 2 + 1) * 4 + 1 * 2 + 1] == doctest::Approx(0.5));
}

TEST_CASE("tensor network contraction") {
  TensorNetwork net(2);
  net.add({{0, 1}, {1, 2, 3, 4}});
  net.add({{1, 0}, {1, 0, 0, 1}});
  // sum_{ab} A_ab B_ba = 1*1 + 2*0 + 3*0 + 4*1
  CHECK(net.contract() == doctest::Approx(5.0));
}
