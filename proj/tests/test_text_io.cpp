#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>

#include "prng.hpp"

#include "complex_matrix.hpp"
#include "test_support.hpp"
#include "text_io.hpp"
#include "weighted_norm.hpp"

using namespace specnorm;
namespace ts = specnorm::testing;

TEST_CASE("parse_matrix") {
  SUBCASE("identity") {
    const ComplexMatrix m = parse_matrix("1,0\n0,1");
    CHECK(frobenius_norm(mat_sub(m, ComplexMatrix::identity(2))) == 0.0);
  }
  SUBCASE("nilpotent") {
    const ComplexMatrix m = parse_matrix("0,1\n0,0");
    CHECK(m(0, 1) == cplx{1.0, 0.0});
    CHECK(frobenius_norm(m) == 1.0);
  }
  SUBCASE("1x1 complex literal") {
    const ComplexMatrix m = parse_matrix("0.5+0.5i");
    CHECK(m(0, 0) == cplx{0.5, 0.5});
  }
  SUBCASE("literal grammar") {
    CHECK(parse_complex("2", 1, 1) == cplx{2.0, 0.0});
    CHECK(parse_complex("1i", 1, 1) == cplx{0.0, 1.0});
    CHECK(parse_complex("-2.5i", 1, 1) == cplx{0.0, -2.5});
    CHECK(parse_complex("0.5-0.25i", 1, 1) == cplx{0.5, -0.25});
    CHECK(parse_complex("1e-3+2e4i", 1, 1) == cplx{1e-3, 2e4});
    CHECK(parse_complex(" 3.5 ", 1, 1) == cplx{3.5, 0.0});
  }
  SUBCASE("whitespace and blank lines are tolerated") {
    const ComplexMatrix m = parse_matrix("\n 1 , 0 \n 0 , 1 \n\n");
    CHECK(frobenius_norm(mat_sub(m, ComplexMatrix::identity(2))) == 0.0);
  }
  SUBCASE("errors carry positions") {
    try {
      parse_matrix("1,0\n0,zzz");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line == 2);
      CHECK(e.column == 3);
    }
  }
  SUBCASE("ragged rows are rejected") {
    CHECK_THROWS_AS(parse_matrix("1,0\n1"), ParseError);
  }
  SUBCASE("non-square is rejected") {
    CHECK_THROWS_AS(parse_matrix("1,0,0\n0,1,0"), ParseError);
  }
  SUBCASE("non-finite literals are rejected") {
    CHECK_THROWS_AS(parse_matrix("nan"), NonFiniteError);
    CHECK_THROWS_AS(parse_matrix("inf"), NonFiniteError);
    CHECK_THROWS_AS(parse_matrix("1e999"), NonFiniteError);
  }
  SUBCASE("malformed literals are rejected") {
    CHECK_THROWS_AS(parse_matrix("1+2j"), ParseError);
    CHECK_THROWS_AS(parse_matrix("1+2"), ParseError);
    CHECK_THROWS_AS(parse_matrix("i"), ParseError);
    CHECK_THROWS_AS(parse_matrix(""), ParseError);
    CHECK_THROWS_AS(parse_matrix("1,\n0,1"), ParseError);
  }
}

TEST_CASE("format round trips") {
  SUBCASE("format_complex canonical forms") {
    CHECK(format_complex(cplx{2.0, 0.0}) == "2");
    CHECK(format_complex(cplx{0.0, 1.0}) == "1i");
    CHECK(format_complex(cplx{0.5, -0.25}) == "0.5-0.25i");
    CHECK(format_complex(cplx{0.0, 0.0}) == "0");
    CHECK(format_complex(cplx{-1.5, 2.0}) == "-1.5+2i");
  }
  SUBCASE("parse after format is exact") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      const ComplexMatrix m = ts::random_matrix(5, 9000 + seed);
      const ComplexMatrix back = parse_matrix(format_matrix(m));
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) CHECK(back(i, j) == m(i, j));
    }
  }
  SUBCASE("extreme magnitudes round trip") {
    ComplexMatrix m(2);
    m(0, 0) = cplx{1e-300, -1e300};
    m(0, 1) = cplx{-0.1, 1.0 / 3.0};
    m(1, 0) = cplx{5e-324, 0.0};  // smallest subnormal
    m(1, 1) = cplx{1.7976931348623157e308, 0.0};
    const ComplexMatrix back = parse_matrix(format_matrix(m));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(back(i, j) == m(i, j));
  }
  SUBCASE("formatting is deterministic") {
    const ComplexMatrix m = ts::random_matrix(4, 9100);
    CHECK(format_matrix(m) == format_matrix(m));
  }
}

TEST_CASE("parse_vector") {
  const ComplexVector v = parse_vector("1, 2i\n0.5-0.25i");
  REQUIRE(v.size() == 3);
  CHECK(v[0] == cplx{1.0, 0.0});
  CHECK(v[1] == cplx{0.0, 2.0});
  CHECK(v[2] == cplx{0.5, -0.25});
  CHECK_THROWS_AS(parse_vector(""), ParseError);
}

TEST_CASE("parser rejects garbage without crashing") {
  SplitMix64 rng(0xFEEDu);
  const char alphabet[] = "0123456789.,+-ie \tnaf[]{}";
  for (int k = 0; k < 2000; ++k) {
    std::string text;
    const int len = 1 + static_cast<int>(rng.next() % 24);
    for (int c = 0; c < len; ++c) {
      text += alphabet[rng.next() % (sizeof(alphabet) - 1)];
      if (rng.next() % 11 == 0) text += '\n';
    }
    try {
      const ComplexMatrix m = parse_matrix(text);
      CHECK(m.all_finite());  // anything accepted must be a valid matrix
    } catch (const ParseError&) {
    } catch (const NonFiniteError&) {
    }
  }
}

TEST_CASE("matrix digest") {
  const ComplexMatrix a = ts::random_matrix(4, 9200);
  const ComplexMatrix b = ts::random_matrix(4, 9201);
  CHECK(matrix_digest(a) == matrix_digest(a));
  CHECK(matrix_digest(a) != matrix_digest(b));
  CHECK(matrix_digest(a).substr(0, 8) == "fnv1a64:");
}

TEST_CASE("certificate serialization") {
  const ComplexMatrix a = ts::random_matrix_with_frobenius(4, 9300, 0.5);
  const auto [w, cert] = construct_norm(a, 0.1);
  const NormCertificate verified = verify_certificate(w, a, 100, 3);
  REQUIRE(verified.verified);
  const std::string digest = matrix_digest(a);
  const std::string doc = certificate_to_json(verified, w, digest);

  SUBCASE("round trip preserves every field and the transform") {
    const LoadedCertificate loaded = certificate_from_json(doc);
    CHECK(loaded.input_digest == digest);
    CHECK(loaded.cert.rho == verified.rho);
    CHECK(loaded.cert.norm_value == verified.norm_value);
    CHECK(loaded.cert.epsilon == verified.epsilon);
    CHECK(loaded.cert.t == verified.t);
    CHECK(loaded.cert.kappa == verified.kappa);
    CHECK(loaded.cert.delta_norm == verified.delta_norm);
    CHECK(loaded.cert.verified == verified.verified);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(loaded.norm.p(i, j) == w.p(i, j));
        CHECK(loaded.norm.p_inv(i, j) == w.p_inv(i, j));
      }

    // Re-verification from the loaded document succeeds.
    const NormCertificate again = verify_certificate(loaded.norm, a, 100, 3);
    CHECK(again.verified);
    CHECK(again.norm_value == doctest::Approx(verified.norm_value).epsilon(1e-12));
  }
  SUBCASE("serialization is byte-deterministic") {
    CHECK(doc == certificate_to_json(verified, w, digest));
  }
  SUBCASE("identity certificate values") {
    const ComplexMatrix eye = ComplexMatrix::identity(3);
    const auto [we, ce] = construct_norm(eye, 0.5);
    const std::string doc_eye =
        certificate_to_json(ce, we, matrix_digest(eye));
    const LoadedCertificate loaded = certificate_from_json(doc_eye);
    CHECK(loaded.cert.rho == doctest::Approx(1.0));
    CHECK(loaded.cert.norm_value == doctest::Approx(1.0));
    CHECK(loaded.cert.t == 1.0);
  }
  SUBCASE("malformed documents are rejected") {
    CHECK_THROWS_AS(certificate_from_json("not json at all"), FormatError);
    CHECK_THROWS_AS(certificate_from_json("{}"), FormatError);
    CHECK_THROWS_AS(certificate_from_json("[1,2,3]"), FormatError);
  }
}

TEST_CASE("report serialization is deterministic") {
  ContractionReport rep;
  rep.rho = 0.5;
  rep.certified_rate = 0.75;
  rep.step_norms = {1.0, 0.7, 0.49};
  rep.step_ratios = {0.7, 0.7};
  rep.max_ratio = 0.7;
  ContractionRunMeta meta;
  meta.nodes = 4;
  meta.edge_prob = 0.3;
  meta.seed = 11;
  meta.steps = 2;
  const std::string doc = report_to_json(rep, meta, true);
  CHECK(doc == report_to_json(rep, meta, true));
  CHECK(doc.find("\"certified\": true") != std::string::npos);
  CHECK(doc.find("\"max_ratio\": \"0.69999999999999996\"") != std::string::npos);
}
