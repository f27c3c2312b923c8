// Copyright 2026 The SIRM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sirm/core.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "sirm/csv.h"
#include "sirm/parallel.h"
#include "sirm/random.h"

namespace sirm {
namespace {

std::string TempPath(const std::string& name) {
  return (std::filesystem::path(testing::TempDir()) / name).string();
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

LabeledSet Indexed(int n) {
  LabeledSet s(1, 1);
  for (int i = 0; i < n; ++i) s.Add(Point{double(i)}, 0);
  return s;
}

TEST(PointTest, RejectsNonFinite) {
  EXPECT_THROW(Point({1.0, std::nan("")}), Error);
  EXPECT_THROW(Point({INFINITY}), Error);
  EXPECT_THROW(Point(std::vector<double>{}), Error);
}

TEST(DistanceTest, Examples) {
  EXPECT_EQ(EuclideanDistance(Point{0, 0}, Point{0, 0}), 0.0);
  EXPECT_EQ(EuclideanDistance(Point{0, 0}, Point{3, 4}), 5.0);
  EXPECT_THROW(EuclideanDistance(Point{0, 0}, Point{1}), Error);
}

TEST(DistanceTest, MatchesResummation) {
  std::mt19937_64 g(11);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> a(7), b(7);
    for (int i = 0; i < 7; ++i) {
      a[i] = u(g);
      b[i] = u(g);
    }
    long double s = 0;
    for (int i = 6; i >= 0; --i) s += (long double)(a[i] - b[i]) * (a[i] - b[i]);
    EXPECT_NEAR(EuclideanDistance(Point(a), Point(b)),
                std::sqrt(static_cast<double>(s)), 1e-12);
  }
}

TEST(DistanceTest, MetricAxiomsOnSampledTriples) {
  std::mt19937_64 g(12);
  std::uniform_real_distribution<double> u(-5, 5);
  auto pt = [&] { return Point({u(g), u(g), u(g)}); };
  for (int rep = 0; rep < 500; ++rep) {
    const Point a = pt(), b = pt(), c = pt();
    EXPECT_EQ(EuclideanDistance(a, b), EuclideanDistance(b, a));
    EXPECT_LE(EuclideanDistance(a, c),
              EuclideanDistance(a, b) + EuclideanDistance(b, c) + 1e-9);
    EXPECT_EQ(EuclideanDistance(a, a), 0.0);
  }
}

std::vector<int> Sizes(const std::vector<LabeledSet>& parts) {
  std::vector<int> out;
  for (const auto& p : parts) out.push_back(p.size());
  return out;
}

TEST(SplitFractionsTest, Examples) {
  const std::vector<double> quarters(4, 0.25);
  EXPECT_EQ(Sizes(SplitFractions(Indexed(8), quarters)),
            (std::vector<int>{2, 2, 2, 2}));
  const std::vector<double> fifths(5, 0.2);
  EXPECT_EQ(Sizes(SplitFractions(Indexed(10), fifths)),
            (std::vector<int>{2, 2, 2, 2, 2}));
  const std::vector<double> whole{1.0};
  EXPECT_EQ(Sizes(SplitFractions(Indexed(1), whole)), (std::vector<int>{1}));
}

TEST(SplitFractionsTest, RemainderGoesToLastPart) {
  const std::vector<double> quarters(4, 0.25);
  EXPECT_EQ(Sizes(SplitFractions(Indexed(11), quarters)),
            (std::vector<int>{2, 2, 2, 5}));
}

TEST(SplitFractionsTest, RejectsBadFractions) {
  const std::vector<double> bad{0.5, 0.4};
  EXPECT_THROW(SplitFractions(Indexed(4), bad), Error);
  const std::vector<double> none;
  EXPECT_THROW(SplitFractions(Indexed(4), none), Error);
}

TEST(SplitFractionsTest, PartsAreDisjointOrderedAndExhaustive) {
  std::mt19937_64 g(3);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 1 + static_cast<int>(g() % 200);
    const int parts = 1 + static_cast<int>(g() % 6);
    std::vector<double> w(parts);
    double total = 0;
    for (double& x : w) total += (x = 1.0 + static_cast<double>(g() % 100));
    for (double& x : w) x /= total;
    // Normalize the residue into the last entry so the sum is exact enough.
    double head = 0;
    for (int i = 0; i + 1 < parts; ++i) head += w[i];
    w.back() = 1.0 - head;
    const auto split = SplitFractions(Indexed(n), w);
    ASSERT_EQ(static_cast<int>(split.size()), parts);
    int next = 0;
    for (const auto& p : split) {
      for (int i = 0; i < p.size(); ++i) EXPECT_EQ(p.point(i)[0], next++);
    }
    EXPECT_EQ(next, n);
  }
}

TEST(CsvTest, EmptyBodyKeepsDimension) {
  const std::string path = TempPath("empty.csv");
  WriteFile(path, "x_0,x_1,x_2,y\n");
  const LabeledSet s = LoadCsv(path);
  EXPECT_EQ(s.size(), 0);
  EXPECT_EQ(s.dim(), 3);
}

TEST(CsvTest, KeepsFileOrder) {
  const std::string path = TempPath("three.csv");
  WriteFile(path, "x_0,y\n3,1\n1,0\n2,1\n");
  const LabeledSet s = LoadCsv(path);
  ASSERT_EQ(s.size(), 3);
  EXPECT_EQ(s.point(0)[0], 3);
  EXPECT_EQ(s.point(1)[0], 1);
  EXPECT_EQ(s.point(2)[0], 2);
  EXPECT_EQ(s.labels(), (std::vector<Label>{1, 0, 1}));
}

TEST(CsvTest, RoundTripIsBitExact) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  LabeledSet s(4, 3);
  for (int i = 0; i < 100; ++i) {
    s.Add(Point({u(g), u(g) * 1e-7, u(g) * 1e9, u(g)}),
          static_cast<Label>(g() % 3));
  }
  const std::string path = TempPath("round.csv");
  SaveCsv(s, path);
  const LabeledSet t = LoadCsv(path, 3);
  ASSERT_EQ(t.size(), s.size());
  for (int i = 0; i < s.size(); ++i) {
    EXPECT_EQ(t.point(i), s.point(i));
    EXPECT_EQ(t.label(i), s.label(i));
  }
}

TEST(CsvTest, MalformedRowNamesLine) {
  const std::string path = TempPath("bad.csv");
  WriteFile(path, "x_0,y\n1,0\n2,zz\n");
  try {
    LoadCsv(path);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
  }
}

TEST(CsvTest, MissingFileNamesPath) {
  try {
    LoadCsv("/nonexistent/data.csv");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/data.csv"),
              std::string::npos);
  }
}

TEST(CsvTest, UnlabeledRoundTrip) {
  UnlabeledSet u(2);
  u.Add(Point{0.1, 0.2});
  u.Add(Point{1.0 / 3.0, -7});
  const std::string path = TempPath("u.csv");
  SaveUnlabeledCsv(u, path);
  EXPECT_FALSE(CsvHasLabels(path));
  const UnlabeledSet v = LoadUnlabeledCsv(path);
  ASSERT_EQ(v.size(), 2);
  EXPECT_EQ(v.point(1), u.point(1));
}

TEST(RandomTest, SameSeedSameStream) {
  Rng a(SeedSpec{42, 3}), b(SeedSpec{42, 3}), c(SeedSpec{42, 4});
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const uint64_t x = a.NextU64();
    EXPECT_EQ(x, b.NextU64());
    differs |= x != c.NextU64();
  }
  EXPECT_TRUE(differs);
}

TEST(RandomTest, UniformIntCoversRange) {
  Rng r(SeedSpec{1, 0});
  std::set<uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const uint64_t v = r.UniformInt(7);
    ASSERT_LT(v, 7u);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(ParallelTest, ResultsIndependentOfThreadCount) {
  auto run = [](int threads) {
    std::vector<double> out(997);
    ParallelFor(997, threads, [&](int i) {
      Rng r(SeedSpec{7, static_cast<uint64_t>(i)});
      out[i] = r.Uniform();
    });
    return out;
  };
  EXPECT_EQ(run(1), run(8));
}

TEST(ParallelTest, PropagatesLowestIndexException) {
  EXPECT_THROW(ParallelFor(50, 4,
                           [](int i) {
                             if (i % 7 == 3) throw Error("boom");
                           }),
               Error);
}

}  // namespace
}  // namespace sirm
