#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "dqd/error.hpp"
#include "dqd/io.hpp"

using namespace dqd;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no exception");
  return ErrorKind::Usage;
}

}  // namespace

TEST_CASE("config round-trip") {
  RunConfig c;
  c.state = "werner:p=0.25";
  c.B = {0.0, 0.011, 0.0165};
  c.t_max = 50.0;
  c.long_grid = true;
  c.quadrature = "cartesian";
  c.m_nodes = 300;
  c.swap_pairing = true;
  const RunConfig back = parse_config(serialize_config(c));
  CHECK(back == c);
  CHECK(serialize_config(c).find('\n') == std::string::npos);

  CHECK(parse_config(R"({"B": 0.5})").B == std::vector<double>{0.5});
  CHECK(kind_of([] { parse_config(R"({"Bfield": 1})"); }) == ErrorKind::Usage);
}

TEST_CASE("state spec parsing") {
  auto s = parse_state_spec("bell:phi+");
  REQUIRE(std::holds_alternative<spec::Bell>(s));
  CHECK(std::get<spec::Bell>(s).which == BellKind::PhiPlus);

  s = parse_state_spec("werner:p=0.33");
  CHECK(std::get<spec::Werner>(s).p == doctest::Approx(0.33));

  s = parse_state_spec("belldiag:a=0.4,b=0.3,bi=0.1,order=phi");
  const auto& bd = std::get<spec::BellDiagonalAB>(s);
  CHECK(bd.a == 0.4);
  CHECK(bd.b == cplx(0.3, 0.1));
  CHECK(bd.ordering == BasisOrdering::Phi);

  s = parse_state_spec("ent:a=0.3,alpha=0.1,beta=0.2");
  CHECK(std::get<spec::EntFamily>(s).b == doctest::Approx(0.2));

  s = parse_state_spec("phase:gamma=1.5");
  CHECK(std::get<spec::PhaseFamily>(s).gamma == 1.5);

  // describe() output parses back
  for (const char* text : {"werner:p=0.25", "bell:psi-", "belldiag:a=0.4,b=0.3,order=phi"})
    CHECK(describe(parse_state_spec(text)) == text);

  CHECK(kind_of([] { parse_state_spec("werner:q=1"); }) == ErrorKind::Usage);
  CHECK(kind_of([] { parse_state_spec("nope"); }) == ErrorKind::Usage);
}

TEST_CASE("raw state parsing") {
  std::string csv = "# singlet\n";
  for (int i = 0; i < 16; ++i) {
    const double v = (i == 5 || i == 10) ? 0.5 : (i == 6 || i == 9) ? -0.5 : 0.0;
    csv += std::to_string(v) + ",0\n";
  }
  const Mat4 r = parse_raw_csv(csv);
  CHECK(r(1, 2).real() == -0.5);
  CHECK(r(2, 2).real() == 0.5);
  CHECK(kind_of([] { parse_raw_csv("1,0,0"); }) == ErrorKind::InvalidParameter);

  const Mat4 j = parse_raw_json("[[[0.25,0],0,0,0],[0,0.25,0,0],[0,0,0.25,0],[0,0,0,[0.25,0]]]");
  CHECK((j - Mat4::Identity() / 4.0).norm() == 0.0);
  CHECK(kind_of([] { parse_raw_json("[[1,2],[3,4]]"); }) == ErrorKind::InvalidParameter);
}

TEST_CASE("field lists") {
  const auto r = parse_field_list("0:0.01:0.0025");
  REQUIRE(r.size() == 5);
  CHECK(r.back() == doctest::Approx(0.01));
  CHECK(parse_field_list("0.1, 0.2,0.5") == std::vector<double>{0.1, 0.2, 0.5});
  CHECK(parse_field_list("").empty());  // sweep() reports the Usage error
  CHECK_THROWS_AS(parse_field_list("1:0:0.1"), Error);
}

TEST_CASE("number formatting") {
  CHECK(fmt(0.1) == "0.10000000000000001");
  CHECK(fmt(std::numeric_limits<double>::quiet_NaN()).empty());
  CHECK(fmt(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(std::stod(fmt(M_PI)) == M_PI);
}

TEST_CASE("CSV schemas") {
  RunConfig c;
  c.t_max = 1.0;
  const auto tr = compute_channel(c.dot(0.0), c.grid());
  std::ostringstream os;
  write_header(os, c, {"state bell:psi-"});
  write_channel_csv(os, tr);
  const std::string out = os.str();
  CHECK(out.rfind("# dqdcorr ", 0) == 0);
  CHECK(out.find("# config {") != std::string::npos);
  CHECK(out.find("# state bell:psi-") != std::string::npos);
  CHECK(out.find("\nt_ns,p,c_re,c_im\n") != std::string::npos);

  const auto ct = evolve(make_state(spec::Bell{BellKind::PsiMinus}), tr);
  std::ostringstream tj;
  write_trajectory_csv(tj, ct);
  const std::string body = tj.str();
  const std::string header = body.substr(0, body.find('\n'));
  CHECK(std::count(header.begin(), header.end(), ',') == 17);
  const auto lines = static_cast<std::size_t>(std::count(body.begin(), body.end(), '\n'));
  CHECK(lines == tr.times.size() + 1);

  std::ostringstream nz;
  CHECK_THROWS_AS(write_trajectory_csv(nz, evolve(make_state(spec::Werner{0.0}), tr), true), Error);
}

TEST_CASE("error records are JSON lines") {
  const auto rec = error_record("Usage", "bad \"flag\"");
  CHECK(rec.find('\n') == std::string::npos);
  CHECK(rec.find("\\\"flag\\\"") != std::string::npos);
}
