#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "semsim/embeddings.hpp"
#include "support/fixtures.hpp"

using namespace semsim;
using doctest::Approx;

TEST_CASE("vector loading with and without a header") {
  std::istringstream plain("a 1.0 0.0\nb 0.0 1.0\nc 0.5 0.5\n");
  VectorSpace vs = VectorSpace::load(plain);
  CHECK(vs.dim() == 2);
  CHECK(vs.size() == 3);
  CHECK(vs.words() == std::vector<std::string>{"a", "b", "c"});

  std::istringstream with_header("3 2\na 1.0 0.0\nb 0.0 1.0\nc 0.5 0.5\n");
  VectorSpace vh = VectorSpace::load(with_header);
  CHECK(vh.dim() == 2);
  CHECK(vh.size() == 3);
  CHECK(vh.vector("c")[0] == 0.5);
}

TEST_CASE("vector loading rejects malformed input") {
  std::istringstream ragged("a 1.0 0.0\nb 1.0\n");
  CHECK_THROWS_AS(VectorSpace::load(ragged), ParseError);
  std::istringstream alpha("a 1.0 x\n");
  CHECK_THROWS_AS(VectorSpace::load(alpha), ParseError);
  std::istringstream inf_value("a 1.0 inf\n");
  CHECK_THROWS_AS(VectorSpace::load(inf_value), ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(VectorSpace::load(empty), Error);
}

TEST_CASE("duplicate words keep the first vector and are counted") {
  std::istringstream in("a 1.0 0.0\na 0.0 1.0\nb 0.0 1.0\n");
  VectorSpace vs = VectorSpace::load(in);
  CHECK(vs.size() == 2);
  CHECK(vs.duplicate_count() == 1);
  CHECK(vs.vector("a")[0] == 1.0);
}

TEST_CASE("save and reload preserve order and values") {
  VectorSpace vs = fixtures::random_space(6, 4, 11);
  std::ostringstream out;
  vs.save(out);
  std::istringstream in(out.str());
  VectorSpace again = VectorSpace::load(in);
  CHECK(again.words() == vs.words());
  CHECK(again.dim() == vs.dim());
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (int d = 0; d < vs.dim(); ++d)
      CHECK(again.vector_at(i)[d] == Approx(vs.vector_at(i)[d]).epsilon(1e-8));
}

TEST_CASE("cosine basics") {
  std::vector<double> e1{1, 0}, e2{0, 1}, v12{1, 2}, v21{2, 1};
  CHECK(cosine(e1, e1) == Approx(1.0));
  CHECK(cosine(e1, e2) == Approx(0.0));
  CHECK(cosine(v12, v21) == Approx(0.8));
  std::vector<double> zero{0, 0};
  CHECK_THROWS_AS(cosine(e1, zero), Error);
  std::vector<double> three{1, 0, 0};
  CHECK_THROWS_AS(cosine(e1, three), Error);
}

TEST_CASE("cosine is symmetric and scale invariant") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> component(-1.0, 1.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> u(5), v(5);
    double nu = 0, nv = 0;
    for (int d = 0; d < 5; ++d) {
      u[d] = component(rng);
      v[d] = component(rng);
      nu += u[d] * u[d];
      nv += v[d] * v[d];
    }
    if (nu < 0.01 || nv < 0.01) continue;  // skip near-zero draws
    double c = scale(rng);
    std::vector<double> cu(5);
    for (int d = 0; d < 5; ++d) cu[d] = c * u[d];
    CHECK(cosine(u, v) == Approx(cosine(v, u)).epsilon(1e-12));
    CHECK(cosine(cu, v) == Approx(cosine(u, v)).epsilon(1e-9));
    CHECK(cosine(u, v) >= -1.0);
    CHECK(cosine(u, v) <= 1.0);
  }
}

TEST_CASE("gloss tokenizer lowercases and strips punctuation") {
  auto tokens = tokenize_gloss("A small, Domesticated (feline)!");
  CHECK(tokens ==
        std::vector<std::string>{"a", "small", "domesticated", "feline"});
  CHECK(tokenize_gloss("").empty());
  CHECK(tokenize_gloss("...").empty());
}

TEST_CASE("gloss sense embeddings average resolvable tokens") {
  Taxonomy t = fixtures::taxonomy_from_string(
      "synset x n x\n  gloss a a\nsynset y n y\n  gloss a b\n"
      "  rel hypernym x\nsynset z n z\n  rel hypernym x\n");
  VectorSpace vs = fixtures::space_from_pairs({{"a", {2, 0}}, {"b", {0, 1}}});

  auto xa = gloss_sense_embedding(vs, t, "x");
  REQUIRE(xa.has_value());
  CHECK(xa->vector == std::vector<double>{2, 0});
  CHECK(xa->token_count == 2);

  auto yb = gloss_sense_embedding(vs, t, "y");
  REQUIRE(yb.has_value());
  CHECK(yb->vector == std::vector<double>{1, 0.5});

  CHECK_FALSE(gloss_sense_embedding(vs, t, "z").has_value());  // no gloss

  // permutation invariance of the token mean
  Taxonomy t2 = fixtures::taxonomy_from_string(
      "synset p n p\n  gloss b a\nsynset q n q\n  gloss a b\n"
      "  rel hypernym p\n");
  auto p = gloss_sense_embedding(vs, t2, "p");
  auto q = gloss_sense_embedding(vs, t2, "q");
  CHECK(p->vector == q->vector);
}

TEST_CASE("unresolvable gloss tokens are skipped entirely") {
  Taxonomy t = fixtures::taxonomy_from_string(
      "synset x n x\n  gloss nothing known here\n");
  VectorSpace vs = fixtures::space_from_pairs({{"a", {1, 0}}});
  CHECK_FALSE(gloss_sense_embedding(vs, t, "x").has_value());
}

TEST_CASE("sense-level similarity maximizes over gloss embeddings") {
  Taxonomy t = fixtures::gloss_bank();
  VectorSpace vs = fixtures::space_from_pairs({
      {"money", {1.0, 0.0}},
      {"institution", {0.9, 0.1}},
      {"deposit", {0.8, 0.0}},
      {"sloping", {0.0, 0.8}},
      {"land", {0.1, 1.0}},
      {"beside", {0.0, 0.5}},
      {"water", {0.0, 1.0}},
      {"large", {0.3, 0.4}},
      {"natural", {0.1, 0.9}},
      {"stream", {0.0, 1.0}},
  });

  auto got = sense_max_similarity(vs, t, "bank", "river", PartOfSpeech::noun);
  REQUIRE(got.has_value());

  // exhaustive enumeration over the two bank senses
  double best = -1;
  for (const auto& sb : t.senses("bank", PartOfSpeech::noun)) {
    auto eb = gloss_sense_embedding(vs, t, sb);
    auto er = gloss_sense_embedding(vs, t, "river");
    REQUIRE(eb.has_value());
    REQUIRE(er.has_value());
    best = std::max(best, cosine(eb->vector, er->vector));
  }
  CHECK(*got == Approx(best));

  // the river-bank reading is the closer one
  auto riverbank = gloss_sense_embedding(vs, t, "bank_river");
  auto river = gloss_sense_embedding(vs, t, "river");
  CHECK(*got == Approx(cosine(riverbank->vector, river->vector)));

  CHECK(sense_max_similarity(vs, t, "bank", "bank", PartOfSpeech::noun) ==
        Approx(1.0));
  // "top" has no gloss: nothing to resolve
  CHECK_FALSE(
      sense_max_similarity(vs, t, "top", "river", PartOfSpeech::noun)
          .has_value());
}

TEST_CASE("unified word cosine distinguishes oov from scores") {
  VectorSpace vs =
      fixtures::space_from_pairs({{"a", {1, 2}}, {"b", {2, 1}}});
  CHECK(word_cosine(vs, "a", "a") == Approx(1.0));
  CHECK(word_cosine(vs, "a", "b") == Approx(0.8));
  CHECK_FALSE(word_cosine(vs, "a", "missing").has_value());
}
