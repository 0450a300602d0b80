#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "paddy/error.hpp"
#include "paddy/model_io.hpp"

using namespace paddy;

namespace {

MoistureModel random_moisture_model(std::uint64_t seed) {
  MoistureModel m{Mlp(MlpTopology{5, 8, 1}), 2, {}};
  initialize_weights(m.net, seed, 3.0);
  m.net.set_gain(0.8123456789012345);
  m.norms.theta = Normalizer(0.1, 0.6);
  return m;
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{0};
}

}  // namespace

TEST(ModelIo, RoundTripIsBitExact) {
  const auto m = random_moisture_model(4);
  const Provenance prov{18446744073709551615ULL, 1000, 0xdeadbeefcafef00dULL};
  std::stringstream ss;
  save_model(to_artifact(m, prov), ss);
  const auto art = load_model(ss);
  EXPECT_EQ(art.provenance, prov);
  EXPECT_EQ(art, to_artifact(m, prov));
  const auto back = moisture_model_from(art);
  EXPECT_EQ(back.lag, 2);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> in(5);
    for (double& v : in) v = u(rng);
    EXPECT_EQ(forward(back.net, in), forward(m.net, in));
  }
}

TEST(ModelIo, Et0RoundTrip) {
  Et0Model m;
  initialize_weights(m.net, 8, 0.5);
  std::stringstream ss;
  save_model(to_artifact(m, Provenance{}), ss);
  const auto back = et0_model_from(load_model(ss));
  EXPECT_EQ(back.net, m.net);
  EXPECT_EQ(back.norms, m.norms);
  EXPECT_EQ(predict_et0(back, 31.0, 24.0, 20.0), predict_et0(m, 31.0, 24.0, 20.0));
  EXPECT_EQ(code_of([&] { moisture_model_from(to_artifact(m, Provenance{})); }), ErrorCode::InvalidArgument);
}

TEST(ModelIo, TruncatedFileIsParseError) {
  std::stringstream ss;
  save_model(to_artifact(random_moisture_model(5), Provenance{}), ss);
  const auto full = ss.str();
  for (std::size_t cut : {full.size() / 3, full.size() / 2, full.size() - 5}) {
    std::istringstream in(full.substr(0, cut));
    EXPECT_EQ(code_of([&] { load_model(in); }), ErrorCode::Parse) << cut;
  }
}

TEST(ModelIo, UnknownVersion) {
  std::stringstream ss;
  save_model(to_artifact(random_moisture_model(6), Provenance{}), ss);
  auto text = ss.str();
  text.replace(0, text.find('\n'), "paddy-model 99");
  std::istringstream in(text);
  EXPECT_EQ(code_of([&] { load_model(in); }), ErrorCode::Version);
}

TEST(ModelIo, CorruptFieldReportsLine) {
  std::stringstream ss;
  save_model(to_artifact(random_moisture_model(7), Provenance{}), ss);
  auto text = ss.str();
  const auto pos = text.find("gain ");
  text.replace(pos, text.find('\n', pos) - pos, "gain abc");
  std::istringstream in(text);
  try {
    load_model(in, "m.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_NE(std::string(e.what()).find("m.txt:5"), std::string::npos) << e.what();
  }
}

TEST(ModelIo, WeightCountMustMatchTopology) {
  std::stringstream ss;
  save_model(to_artifact(random_moisture_model(8), Provenance{}), ss);
  auto text = ss.str();
  const auto pos = text.find("topology 5 8 1");
  text.replace(pos, 14, "topology 5 7 1");
  std::istringstream in(text);
  EXPECT_EQ(code_of([&] { load_model(in); }), ErrorCode::Parse);
}

TEST(PatternDigest, SensitiveToData) {
  std::vector<Pattern> a{Pattern{{0.1, 0.2}, {0.3}}};
  auto b = a;
  b[0].input[1] = std::nextafter(0.2, 1.0);
  EXPECT_EQ(pattern_digest(a), pattern_digest(a));
  EXPECT_NE(pattern_digest(a), pattern_digest(b));
}
