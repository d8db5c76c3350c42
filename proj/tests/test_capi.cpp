#include <cmath>
#include <cstring>
#include <string>

#include "doctest.h"
#include "fbc.h"
#include "json.hpp"

using nlohmann::json;

namespace {

const char* kBsc = "{\"matrix\": [[0.89, 0.11], [0.11, 0.89]]}";
const char* kChain = "{\"transition\": [[0.9, 0.1], [0.2, 0.8]]}";

struct Channel {
  fbc_channel* p = nullptr;
  explicit Channel(const char* text) { REQUIRE(fbc_channel_parse(text, &p) == FBC_OK); }
  ~Channel() { fbc_channel_free(p); }
};

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  fbc_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("channel parse failures set the error message and code") {
  fbc_channel* ch = nullptr;
  CHECK(fbc_channel_parse("not json", &ch) == FBC_ERR_VALIDATION);
  CHECK(std::strlen(fbc_last_error()) > 0);
  CHECK(fbc_channel_parse("{\"matrix\": [[0.5, 0.6], [0.5, 0.4]]}", &ch) == FBC_ERR_VALIDATION);
  CHECK(fbc_channel_parse(nullptr, &ch) == FBC_ERR_VALIDATION);
  CHECK(fbc_channel_parse("{\"matrix\": [[0.5, 0.5]], \"input_law\": [0.3, 0.7]}", &ch) ==
        FBC_ERR_VALIDATION);  // law length mismatch
}

TEST_CASE("capacity report json") {
  Channel ch(kBsc);
  char* out = nullptr;
  REQUIRE(fbc_capacity_json(ch.p, nullptr, 1e-10, &out) == FBC_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("capacity").get<double>() == doctest::Approx(0.34663184364127914).epsilon(1e-10));
  CHECK(j.at("gap").get<double>() <= 1e-10);
  CHECK(j.at("q_m").size() == 2);
  CHECK(!j.contains("lambda"));
}

TEST_CASE("cost-constrained capacity report json") {
  Channel ch(kBsc);
  fbc_cost* cost = nullptr;
  REQUIRE(fbc_cost_parse("{\"costs\": [0.0, 1.0], \"cap\": 0.25}", &cost) == FBC_OK);
  char* out = nullptr;
  REQUIRE(fbc_capacity_json(ch.p, cost, 1e-10, &out) == FBC_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("capacity").get<double>() == doctest::Approx(0.2685261175306799).epsilon(1e-7));
  CHECK(j.at("lambda").get<double>() > 0.0);
  CHECK(j.at("expected_cost").get<double>() == doctest::Approx(0.25).epsilon(1e-6));
  fbc_cost_free(cost);
  CHECK(fbc_cost_parse("{\"costs\": [0.0, 1.0]}", &cost) == FBC_ERR_VALIDATION);
}

TEST_CASE("dispersion and second-order reports") {
  Channel ch(kBsc);
  char* out = nullptr;
  REQUIRE(fbc_dispersion_json(ch.p, nullptr, 1e-10, &out) == FBC_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("v_plus").get<double>() == doctest::Approx(0.4279403169385257).epsilon(1e-8));
  CHECK(j.at("v_minus").get<double>() == doctest::Approx(0.4279403169385257).epsilon(1e-8));

  REQUIRE(fbc_second_order_json(ch.p, nullptr, 1e-10, 1, 0.05, &out) == FBC_OK);
  auto s = json::parse(take(out));
  CHECK(s.at("mode") == "rate");
  CHECK(s.at("selected") == "v_minus");
  CHECK(s.at("value").get<double>() ==
        doctest::Approx(std::sqrt(0.4279403169385257) * -1.6448536269514729).epsilon(1e-9));
  REQUIRE(fbc_second_order_json(ch.p, nullptr, 1e-10, 1, 0.95, &out) == FBC_OK);
  auto s2 = json::parse(take(out));
  CHECK(s2.at("selected") == "v_plus");
  REQUIRE(fbc_second_order_json(ch.p, nullptr, 1e-10, 0, -0.5, &out) == FBC_OK);
  auto s3 = json::parse(take(out));
  CHECK(s3.at("mode") == "error");
  CHECK(s3.at("value").get<double>() > 0.0);
  CHECK(s3.at("value").get<double>() < 0.5);
  CHECK(fbc_second_order_json(ch.p, nullptr, 1e-10, 1, 1.5, &out) == FBC_ERR_VALIDATION);
}

TEST_CASE("markov report json") {
  fbc_markov* m = nullptr;
  REQUIRE(fbc_markov_parse(kChain, &m) == FBC_OK);
  char* out = nullptr;
  REQUIRE(fbc_markov_report_json(m, 0.05, 400, &out) == FBC_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("entropy_rate").get<double>() == doctest::Approx(0.38352279010702806).epsilon(1e-12));
  CHECK(j.at("capacity").get<double>() == doctest::Approx(0.30962439045291723).epsilon(1e-12));
  CHECK(j.at("variance").get<double>() == doctest::Approx(0.4985408392082036).epsilon(1e-11));
  fbc_markov_free(m);
  CHECK(fbc_markov_parse("{\"transition\": [[1.0, 0.0], [0.0, 1.0]]}", &m) ==
        FBC_ERR_VALIDATION);  // reducible
}

TEST_CASE("gaussian report json") {
  char* out = nullptr;
  REQUIRE(fbc_gaussian_report_json(1.0, 1.0, 0.05, &out) == FBC_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("capacity").get<double>() == doctest::Approx(0.34657359027997264).epsilon(1e-14));
  CHECK(j.at("dispersion").get<double>() == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(j.at("second_order").get<double>() == doctest::Approx(-1.007263021899335).epsilon(1e-11));
  CHECK(fbc_gaussian_report_json(-1.0, 1.0, 0.05, &out) == FBC_ERR_VALIDATION);
}

TEST_CASE("gallager csv outputs") {
  char* out = nullptr;
  REQUIRE(fbc_gallager_compare_csv(0.4279403169385257, -2.0, 1.0, 4, &out) == FBC_OK);
  std::string csv = take(out);
  CHECK(csv.rfind("r2,gaussian,gallager\n", 0) == 0);
  Channel ch(kBsc);
  long long grid[] = {100, 400};
  REQUIRE(fbc_gallager_limit_csv(ch.p, -1.0, grid, 2, &out) == FBC_OK);
  std::string limit = take(out);
  CHECK(limit.rfind("n,scaled_min,s_n,sqrt_n_s_n\n", 0) == 0);
  CHECK(fbc_gallager_limit_csv(ch.p, 1.0, grid, 2, &out) == FBC_ERR_VALIDATION);
}

TEST_CASE("simulation outputs are deterministic and worker invariant") {
  Channel ch(kBsc);
  char* out = nullptr;
  REQUIRE(fbc_simulate_csv(ch.p, 200, 50, 7, 1, 0, 0.0, &out) == FBC_OK);
  std::string a = take(out);
  REQUIRE(fbc_simulate_csv(ch.p, 200, 50, 7, 4, 0, 0.0, &out) == FBC_OK);
  std::string b = take(out);
  CHECK(a == b);
  REQUIRE(fbc_simulate_summary_json(ch.p, 400, 400, 42, 2, 0, 0.0, &out) == FBC_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("ks").get<double>() < 0.15);
  CHECK(j.at("center").get<double>() == doctest::Approx(0.34663184364127914).epsilon(1e-10));
  // explicit center propagates
  REQUIRE(fbc_simulate_summary_json(ch.p, 400, 400, 42, 2, 1, 0.3, &out) == FBC_OK);
  auto j2 = json::parse(take(out));
  CHECK(j2.at("center").get<double>() == 0.3);
}

TEST_CASE("oracle endpoints") {
  Channel ch(kBsc);
  char* out = nullptr;
  REQUIRE(fbc_oracle_direct_json(ch.p, 6, 4, 0.2, 7, &out) == FBC_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("exact_error").get<double>() >= 0.0);
  CHECK(j.at("exact_error").get<double>() <= 1.0);
  CHECK(j.at("penalty").get<double>() ==
        doctest::Approx(2.0 * std::exp(-6.0 * 0.2)).epsilon(1e-12));
  CHECK(j.at("bound").get<double>() ==
        doctest::Approx(j.at("tail").get<double>() + j.at("penalty").get<double>())
            .epsilon(1e-12));
  REQUIRE(fbc_oracle_converse_json(ch.p, 6, 8, 0.1, 3, 0, &out) == FBC_OK);
  auto u = json::parse(take(out));
  CHECK(u.at("reference") == "uniform");
  CHECK(u.at("holds").get<bool>());
  CHECK(u.at("lhs").get<double>() >= u.at("rhs").get<double>());
  REQUIRE(fbc_oracle_converse_json(ch.p, 6, 8, 0.1, 3, 1, &out) == FBC_OK);
  auto m = json::parse(take(out));
  CHECK(m.at("reference") == "mixture");
  CHECK(m.at("lhs").get<double>() == u.at("lhs").get<double>());
  // enumeration guard surfaces as its own status code
  CHECK(fbc_oracle_direct_json(ch.p, 15, 4, 0.2, 7, &out) == FBC_ERR_ENUMERATION);
}

TEST_CASE("example reports") {
  char* out = nullptr;
  REQUIRE(fbc_example_json(0.3, 0.2, &out) == FBC_OK);
  auto j = json::parse(take(out));
  CHECK(j.at("level").get<double>() == doctest::Approx(0.02415725678117142).epsilon(1e-12));
  CHECK(j.at("p1").get<double>() == doctest::Approx(0.20297284304286856).epsilon(1e-10));
  CHECK(j.at("v_p").get<double>() < j.at("v_pprime").get<double>());
  REQUIRE(fbc_example_sweep_csv(0.05, 0.45, 3, &out) == FBC_OK);
  std::string csv = take(out);
  CHECK(csv.rfind("q1,q2,v_p,v_pprime,capacity\n", 0) == 0);
  CHECK(fbc_example_json(0.8, 0.1, &out) == FBC_ERR_VALIDATION);
}

TEST_CASE("normal helpers round trip") {
  double x = 0.0;
  REQUIRE(fbc_normal_quantile(0.05, &x) == FBC_OK);
  CHECK(x == doctest::Approx(-1.6448536269514729).epsilon(1e-11));
  CHECK(fbc_normal_cdf(x) == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(fbc_normal_quantile(0.0, &x) == FBC_ERR_VALIDATION);
  CHECK(fbc_normal_quantile(0.5, nullptr) == FBC_ERR_VALIDATION);
}

TEST_CASE("null argument handling") {
  Channel ch(kBsc);
  CHECK(fbc_capacity_json(nullptr, nullptr, 1e-10, nullptr) == FBC_ERR_VALIDATION);
  char* out = nullptr;
  CHECK(fbc_capacity_json(nullptr, nullptr, 1e-10, &out) == FBC_ERR_VALIDATION);
  CHECK(out == nullptr);
  CHECK(std::strlen(fbc_last_error()) > 0);
  fbc_string_free(nullptr);  // must be a no-op
  fbc_channel_free(nullptr);
}
