#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "helpers.hpp"
#include "tir/dataset.hpp"
#include "tir/text.hpp"
#include "tir/tree.hpp"

using namespace tir;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("preprocess applies the tokenization rules") {
  Sentence s = preprocess("The Cat sat !");
  CHECK(s.tokens == std::vector<std::string>{"the", "cat", "sat"});
  CHECK(s.raw_length == 13);

  CHECK_THROWS_AS(preprocess("A b"), Error);
  CHECK_THROWS_AS(preprocess("  !! ?! ."), Error);

  CHECK(preprocess("Hello, WORLD").tokens == std::vector<std::string>{"hello", "world"});
  CHECK(preprocess("it don't matter --").tokens == std::vector<std::string>{"it", "don't", "matter"});
}

TEST_CASE("parse_conllu reads and validates") {
  auto [s, t] = parse_conllu({"1\tcats\t2", "2\tsleep\t0", "3\tsoundly\t2"});
  CHECK(s.tokens == std::vector<std::string>{"cats", "sleep", "soundly"});
  CHECK(t.heads == std::vector<int>{2, 0, 2});
  CHECK(t.root() == 2);
  CHECK(t.children()[2] == std::vector<int>{1, 3});

  auto [s1, t1] = parse_conllu({"1\thi\t0"});
  CHECK(t1.heads == std::vector<int>{0});
  CHECK(t1.children()[1].empty());

  CHECK_THROWS_WITH(parse_conllu({"1\ta\t2", "2\tb\t1"}), Catch::Matchers::ContainsSubstring("cycle"));
  CHECK_THROWS_WITH(parse_conllu({"1\ta\t0", "2\tb\t0"}),
                    Catch::Matchers::ContainsSubstring("exactly one root"));
  CHECK_THROWS_WITH(parse_conllu({"2\ta\t0"}), Catch::Matchers::ContainsSubstring("expected ID 1"));
  CHECK_THROWS_WITH(parse_conllu({"1\ta"}), Catch::Matchers::ContainsSubstring("3 tab-separated"));
  CHECK_THROWS_WITH(parse_conllu({"1\ta\t5"}), Catch::Matchers::ContainsSubstring("out of range"));
  // Extra columns beyond ID/FORM/HEAD are ignored.
  auto [s2, t2] = parse_conllu({"1\tok\t0\tNOUN\t_\t_"});
  CHECK(s2.tokens == std::vector<std::string>{"ok"});
}

TEST_CASE("parse_sexpr binarizes and collapses") {
  auto [s, t] = parse_sexpr("(S (NP the cat) (VP sat))");
  CHECK(s.tokens == std::vector<std::string>{"the", "cat", "sat"});
  CHECK(serialize_sexpr(s, t) == "(X (X the cat) sat)");

  auto [s2, t2] = parse_sexpr("(X a b c)");
  CHECK(serialize_sexpr(s2, t2) == "(X a (X b c))");

  auto [s3, t3] = parse_sexpr("(S (S (S x)))");
  CHECK(s3.tokens == std::vector<std::string>{"x"});
  CHECK(serialize_sexpr(s3, t3) == "x");

  CHECK_THROWS_WITH(parse_sexpr("(S (NP the"), Catch::Matchers::ContainsSubstring("offset"));
  CHECK_THROWS_WITH(parse_sexpr("()"), Catch::Matchers::ContainsSubstring("empty node"));
  CHECK_THROWS_WITH(parse_sexpr("(S a))"), Catch::Matchers::ContainsSubstring("trailing"));
}

TEST_CASE("fallback_tree is right-branching") {
  Sentence s;
  s.tokens = {"aa", "bb", "cc"};
  CHECK(serialize_sexpr(s, fallback_tree(s)) == "(X aa (X bb cc))");

  Sentence one;
  one.tokens = {"aa"};
  ConstituencyTree t1 = fallback_tree(one);
  CHECK(t1.is_leaf(t1.root));

  Sentence two;
  two.tokens = {"aa", "bb"};
  CHECK(serialize_sexpr(two, fallback_tree(two)) == "(X aa bb)");
}

TEST_CASE("bottom_up_order on dependency trees") {
  DependencyTree chain{{2, 3, 0}};
  ParentChildSet order = bottom_up_order(chain);
  REQUIRE(order.size() == 2);
  CHECK(order[0].parent == 2);
  CHECK(order[0].children == std::vector<int>{1});
  CHECK(order[1].parent == 3);
  CHECK(order[1].children == std::vector<int>{2});

  DependencyTree star{{2, 0, 2}};
  ParentChildSet order2 = bottom_up_order(star);
  REQUIRE(order2.size() == 1);
  CHECK(order2[0].parent == 2);
  CHECK(order2[0].children == std::vector<int>{1, 3});
}

TEST_CASE("bottom_up_order is topological on random trees") {
  Rng rng = substream(17, "tree-prop");
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + uniform_int(rng, 12);
    DependencyTree t = testutil::random_dep_tree(n, rng);
    t.validate();
    ParentChildSet order = bottom_up_order(t);

    int internal = 0;
    auto ch = t.children();
    for (int p = 1; p <= n; ++p) internal += ch[static_cast<size_t>(p)].empty() ? 0 : 1;
    CHECK(static_cast<int>(order.size()) == internal);

    std::vector<int> pos(static_cast<size_t>(n) + 1, -1);
    for (size_t i = 0; i < order.size(); ++i) pos[static_cast<size_t>(order[i].parent)] = static_cast<int>(i);
    for (size_t i = 0; i < order.size(); ++i)
      for (int c : order[i].children)
        if (pos[static_cast<size_t>(c)] >= 0) CHECK(pos[static_cast<size_t>(c)] < static_cast<int>(i));
  }
}

TEST_CASE("binarization and round-trips on random trees") {
  Rng rng = substream(23, "tree-roundtrip");
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + uniform_int(rng, 9);
    std::vector<std::string> toks;
    for (int i = 0; i < n; ++i) toks.push_back("w" + std::to_string(i) + "x");

    auto [s, t] = parse_sexpr(testutil::random_sexpr(toks, rng));
    CHECK(s.tokens == toks);
    for (size_t id = 0; id < t.nodes.size(); ++id)
      if (!t.is_leaf(static_cast<int>(id))) {
        CHECK(t.node(static_cast<int>(id)).left >= 0);
        CHECK(t.node(static_cast<int>(id)).right >= 0);
      }
    // Canonical serialization round-trips exactly.
    std::string canon = serialize_sexpr(s, t);
    auto [s2, t2] = parse_sexpr(canon);
    CHECK(serialize_sexpr(s2, t2) == canon);

    DependencyTree d = testutil::random_dep_tree(n, rng);
    Sentence ds_sent;
    ds_sent.tokens = toks;
    auto [s3, d2] = parse_conllu(split_on(serialize_conllu(ds_sent, d), '\n'));
    CHECK(d2.heads == d.heads);
    CHECK(s3.tokens == toks);
  }
}

TEST_CASE("preprocess_parsed splices dependency nodes") {
  Sentence raw;
  raw.tokens = {"The", "!", "cats"};
  DependencyTree t{{2, 3, 0}};
  auto [s, out] = preprocess_parsed(raw, t);
  CHECK(s.tokens == std::vector<std::string>{"the", "cats"});
  CHECK(out.heads == std::vector<int>{2, 0});

  // Removing the root re-roots deterministically at the first orphan.
  Sentence raw2;
  raw2.tokens = {"!!", "bb", "cc"};
  DependencyTree t2{{0, 1, 1}};
  auto [s2, out2] = preprocess_parsed(raw2, t2);
  CHECK(s2.tokens == std::vector<std::string>{"bb", "cc"});
  CHECK(out2.heads == std::vector<int>{0, 1});

  Sentence gone;
  gone.tokens = {"!", "?"};
  CHECK_THROWS_AS(preprocess_parsed(gone, DependencyTree{{0, 1}}), Error);
}

TEST_CASE("preprocess_parsed deletes constituency leaves") {
  auto [raw, tree] = parse_sexpr("(S (NP The cat) (VP sat !))");
  auto [s, out] = preprocess_parsed(raw, tree);
  CHECK(s.tokens == std::vector<std::string>{"the", "cat", "sat"});
  CHECK(serialize_sexpr(s, out) == "(X (X the cat) sat)");
}

TEST_CASE("dataset loading with trees and labels") {
  auto tsv = write_temp("tir_ds.tsv", "pos\tthe cat sat on the mat\nneg\tdogs sleep soundly\n");
  auto trees = write_temp("tir_ds.conllu",
                          "1\tthe\t2\n2\tcat\t3\n3\tsat\t0\n4\ton\t3\n5\tthe\t6\n6\tmat\t4\n\n"
                          "1\tdogs\t2\n2\tsleep\t0\n3\tsoundly\t2\n");
  LabelMap labels;
  Dataset ds = load_dataset(tsv.string(), TreePolicy::file, TreeKind::dependency, trees.string(),
                            labels, true);
  REQUIRE(ds.size() == 2);
  CHECK(labels.names == std::vector<std::string>{"pos", "neg"});
  CHECK(ds.examples[0].sentence.label == 0);
  CHECK(ds.examples[0].sentence.tokens ==
        std::vector<std::string>{"the", "cat", "sat", "on", "the", "mat"});
  CHECK(ds.examples[0].sentence.raw_length == 22);
  CHECK(ds.examples[1].kind == TreeKind::dependency);

  // Unknown label when the map is frozen.
  LabelMap frozen;
  frozen.intern("pos");
  CHECK_THROWS_WITH(
      load_dataset(tsv.string(), TreePolicy::fallback, TreeKind::none, "", frozen, false),
      Catch::Matchers::ContainsSubstring("unknown label"));

  // Tree count mismatch.
  auto short_trees = write_temp("tir_short.conllu", "1\tthe\t0\n");
  CHECK_THROWS_WITH(load_dataset(tsv.string(), TreePolicy::file, TreeKind::dependency,
                                 short_trees.string(), labels, true),
                    Catch::Matchers::ContainsSubstring("trees for"));
}

TEST_CASE("parsed dataset JSONL round-trip") {
  auto tsv = write_temp("tir_pd.tsv", "pos\tthe cat sat\nneg\tdogs sleep soundly\n");
  LabelMap labels;
  Dataset ds = load_dataset(tsv.string(), TreePolicy::fallback, TreeKind::none, "", labels, true);

  auto jsonl = std::filesystem::temp_directory_path() / "tir_pd.jsonl";
  save_parsed_dataset(ds, labels, jsonl.string());

  LabelMap labels2;
  Dataset back = load_parsed_dataset(jsonl.string(), labels2, true);
  REQUIRE(back.size() == ds.size());
  CHECK(labels2.names == labels.names);
  for (size_t i = 0; i < ds.size(); ++i) {
    CHECK(back.examples[i].sentence.tokens == ds.examples[i].sentence.tokens);
    CHECK(back.examples[i].sentence.label == ds.examples[i].sentence.label);
    CHECK(back.examples[i].sentence.raw_length == ds.examples[i].sentence.raw_length);
    CHECK(back.examples[i].kind == ds.examples[i].kind);
    CHECK(serialize_sexpr(back.examples[i].sentence, back.examples[i].cons) ==
          serialize_sexpr(ds.examples[i].sentence, ds.examples[i].cons));
  }
}
