#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <variant>

#include "qcpuc/channels.hpp"
#include "qcpuc/errors.hpp"
#include "qcpuc/io.hpp"

using namespace qcpuc;

namespace {

std::filesystem::path data(const char* name) { return std::filesystem::path(QCPUC_TEST_DATA_DIR) / name; }

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(LoadChannel, MatchesBuiltInChannels) {
  const KrausChannel ad = io::load_channel(data("amplitude_damping.json"));
  const KrausChannel expected = amplitude_damping_channel(0.3);
  ASSERT_EQ(ad.kraus_ops().size(), expected.kraus_ops().size());
  for (std::size_t k = 0; k < ad.kraus_ops().size(); ++k) {
    EXPECT_LE(max_abs(ad.kraus_ops()[k] - expected.kraus_ops()[k]), 1e-15);
  }
  const KrausChannel gad = io::load_channel(data("gad_channel.json"));
  const KrausChannel gad_expected = generalized_amplitude_damping_channel(0.3, 0.8);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_LE(max_abs(gad.kraus_ops()[k] - gad_expected.kraus_ops()[k]), 1e-15);
  }
}

TEST(ParseChannel, EntryFormsAndFlatLayout) {
  const KrausChannel nested = io::parse_channel(R"({"dim_in":2,"dim_out":2,"kraus":[[[1,0],[0,1]]]})");
  EXPECT_EQ(max_abs(nested.kraus_ops()[0] - ComplexMatrix::Identity(2, 2)), 0.0);

  const KrausChannel complex_nested =
      io::parse_channel(R"({"dim_in":2,"dim_out":2,"kraus":[[[[0,1],0],[0,[0,-1]]]]})");
  EXPECT_EQ(complex_nested.kraus_ops()[0](0, 0), Complex(0.0, 1.0));
  EXPECT_EQ(complex_nested.kraus_ops()[0](1, 1), Complex(0.0, -1.0));

  const KrausChannel flat = io::parse_channel(R"({"dim_in":2,"dim_out":2,"kraus":[[1,0,0,1]]})");
  EXPECT_EQ(max_abs(flat.kraus_ops()[0] - ComplexMatrix::Identity(2, 2)), 0.0);

  const KrausChannel flat_pairs =
      io::parse_channel(R"({"dim_in":2,"dim_out":2,"kraus":[[[1,0],[0,0],[0,0],[1,0]]]})");
  EXPECT_EQ(max_abs(flat_pairs.kraus_ops()[0] - ComplexMatrix::Identity(2, 2)), 0.0);

  const KrausChannel trace = io::parse_channel(R"({"dim_in":2,"dim_out":1,"kraus":[[[1,0]],[[0,1]]]})");
  EXPECT_EQ(trace.dim_out(), 1);
}

TEST(ParseChannel, Errors) {
  EXPECT_THROW(io::parse_channel("{not json"), ValidationError);
  EXPECT_THROW(io::parse_channel(R"({"dim_in":2,"dim_out":2})"), ValidationError);
  EXPECT_THROW(io::parse_channel(R"({"dim_in":2,"dim_out":2,"kraus":[]})"), ValidationError);
  EXPECT_THROW(io::parse_channel(R"({"dim_in":2,"dim_out":2,"kraus":[[[0.5,0],[0,0.5]]]})"),
               ValidationError);
  EXPECT_THROW(io::parse_channel(R"({"dim_in":2,"dim_out":2,"kraus":[[[1,0,0],[0,1,0]]]})"),
               ValidationError);
  EXPECT_THROW(io::parse_channel(R"({"dim_in":0,"dim_out":2,"kraus":[[1]]})"), ValidationError);
  EXPECT_THROW(io::parse_channel(R"({"dim_in":2,"dim_out":2,"kraus":[[["a",0],[0,1]]]})"),
               ValidationError);
  EXPECT_THROW(io::load_channel(data("missing.json")), ValidationError);
}

TEST(ChannelToJson, RoundTrip) {
  const KrausChannel gad = generalized_amplitude_damping_channel(0.2, 0.6);
  const KrausChannel back = io::parse_channel(io::channel_to_json(gad));
  ASSERT_EQ(back.kraus_ops().size(), gad.kraus_ops().size());
  for (std::size_t k = 0; k < gad.kraus_ops().size(); ++k) {
    EXPECT_EQ(max_abs(back.kraus_ops()[k] - gad.kraus_ops()[k]), 0.0);
  }
}

TEST(LoadEnsemble, Example) {
  const Ensemble e = io::load_ensemble(data("plus_zero_ensemble.json"));
  ASSERT_EQ(e.size(), 2u);
  EXPECT_EQ(e.dim(), 2);
  EXPECT_EQ(e.symbols()[1].cost, 1.0);
  EXPECT_NEAR(e.symbols()[1].state.matrix()(0, 1).real(), 0.5, 0.0);
  EXPECT_NEAR(e.average_cost(), 0.5, 1e-15);
}

TEST(ParseEnsemble, Errors) {
  EXPECT_THROW(io::parse_ensemble(R"({"dim":2,"symbols":[{"state":[[1,0],[0,0]]}]})"), ValidationError);
  EXPECT_THROW(io::parse_ensemble(R"({"dim":2,"symbols":[{"prior":0.5,"state":[[1,0],[0,0]]}]})"),
               ValidationError);
  EXPECT_THROW(io::parse_ensemble(R"({"dim":2,"symbols":[{"prior":1,"state":[[1,1],[1,0]]}]})"),
               ValidationError);
  EXPECT_THROW(io::parse_ensemble(R"({"dim":2,"symbols":[]})"), ValidationError);
}

TEST(LoadCostedStates, PriorIsOptional) {
  const std::vector<CostedState> s = io::load_costed_states(data("bsc_states.json"));
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].cost, 0.0);
  EXPECT_EQ(s[1].cost, 1.0);
  EXPECT_EQ(s[1].state.matrix()(1, 1), Complex(0.9));
  EXPECT_THROW(io::parse_costed_states(R"({"dim":1,"symbols":[{"cost":-1,"state":[[1]]}]})"),
               ValidationError);
}

TEST(LoadFamily, Kinds) {
  const ParamStateFamily bloch = io::load_family(data("gad_bloch_family.json"));
  EXPECT_EQ(bloch.param_dim(), 3);
  ASSERT_TRUE(bloch.free_point().has_value());
  EXPECT_EQ((*bloch.free_point())[2], 1.0);

  const ParamStateFamily coh = io::load_family(data("thermal_coherent_family.json"));
  EXPECT_EQ(coh.param_dim(), 1);
  EXPECT_EQ(coh.state_dim(), 30);

  const ParamStateFamily mix =
      io::parse_family(R"({"kind":"mixture","rho0":[[1,0],[0,0]],"rho1":[[0.5,0.5],[0.5,0.5]]})");
  EXPECT_NEAR(mix.at(1.0).matrix()(0, 1).real(), 0.5, 1e-15);

  const ParamStateFamily curve =
      io::parse_family(R"({"kind":"bloch-curve","r0":[0,0,0.5],"v":[0.3,0,0],"range":1})");
  EXPECT_EQ(curve.param_dim(), 1);

  EXPECT_THROW(io::parse_family(R"({"kind":"unknown"})"), ValidationError);
  EXPECT_THROW(io::parse_family(R"({"kind":"bloch","free_point":[0,0]})"), ValidationError);
  EXPECT_THROW(io::parse_family(R"({"free_point":[0,0,1]})"), ValidationError);
}

TEST(LoadCost, Kinds) {
  const CostFunction photon = io::load_cost(data("photon_cost.json"), 5);
  ASSERT_TRUE(std::holds_alternative<ObservableCost>(photon));
  EXPECT_EQ(std::get<ObservableCost>(photon).observable(4, 4), Complex(4.0));
  EXPECT_TRUE(std::holds_alternative<QuadraticCost>(io::parse_cost(R"({"kind":"quadratic"})", 2)));
  const CostFunction obs = io::parse_cost(R"({"kind":"observable","matrix":[[0,0],[0,2]]})", 2);
  EXPECT_EQ(std::get<ObservableCost>(obs).observable(1, 1), Complex(2.0));
  EXPECT_THROW(io::parse_cost(R"({"kind":"observable","matrix":[[0,1],[0,2]]})", 2), ValidationError);
  EXPECT_THROW(io::parse_cost(R"({"kind":"observable","matrix":[[0,0],[0,2]]})", 3), ValidationError);
  EXPECT_THROW(io::parse_cost(R"({"kind":"energy"})", 2), ValidationError);
}

TEST(LoadGaussianChannel, DefaultsAndValidation) {
  const gaussian::FiducialChannel ch = io::load_gaussian_channel(data("thermal_channel.json"));
  EXPECT_EQ(ch.eta, 0.9);
  EXPECT_EQ(ch.n_tilde, 1.0);
  const gaussian::FiducialChannel bare = io::parse_gaussian_channel(R"({"eta":0.5})");
  EXPECT_EQ(bare.n_tilde, 0.0);
  EXPECT_EQ(bare.omega_tilde, 1.0);
  EXPECT_THROW(io::parse_gaussian_channel(R"({"eta":0.5,"n_tilde":-1})"), ValidationError);
  EXPECT_THROW(io::parse_gaussian_channel(R"({"n_tilde":1})"), ValidationError);
}
