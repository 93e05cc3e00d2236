#include "doctest.h"

#include <string>

#include "dblcat/dblcat.h"

namespace {
std::string take(char* s) {
  std::string out = s ? s : "";
  dbl_string_free(s);
  return out;
}
}  // namespace

TEST_CASE("load, check and serialize through the C surface") {
  dbl_cat* c = nullptr;
  REQUIRE(dbl_cat_load("corpus:hsim:I", &c) == DBL_OK);
  dbl_report* rep = nullptr;
  REQUIRE(dbl_check_whi(c, &rep) == DBL_OK);
  CHECK(dbl_report_verdict(rep) == 1);
  char* text = nullptr;
  REQUIRE(dbl_report_render(rep, "machine", &text) == DBL_OK);
  auto json = take(text);
  CHECK(json.find("\"verdict\": true") != std::string::npos);
  dbl_report* back = nullptr;
  REQUIRE(dbl_report_parse(json.c_str(), &back) == DBL_OK);
  CHECK(dbl_report_verdict(back) == 1);
  dbl_report_free(back);
  dbl_report_free(rep);

  char* ser = nullptr;
  REQUIRE(dbl_cat_serialize(c, &ser) == DBL_OK);
  auto doc = take(ser);
  dbl_cat* c2 = nullptr;
  REQUIRE(dbl_cat_load(doc.c_str(), &c2) == DBL_OK);
  char* ser2 = nullptr;
  REQUIRE(dbl_cat_serialize(c2, &ser2) == DBL_OK);
  CHECK(take(ser2) == doc);
  dbl_cat_free(c2);
  dbl_cat_free(c);
}

TEST_CASE("errors surface as status codes with messages") {
  dbl_cat* c = nullptr;
  CHECK(dbl_cat_load("corpus:nope", &c) == DBL_E_UNKNOWN_NAME);
  CHECK(std::string(dbl_last_error()).find("nope") != std::string::npos);
  CHECK(dbl_cat_load("dblcat X\nobjects A\n", &c) == DBL_E_PARSE);
  CHECK(dbl_cat_load(nullptr, &c) == DBL_E_BADARG);

  dbl_fun* f = nullptr;
  REQUIRE(dbl_fun_load("corpus:!:h:I", &f) == DBL_OK);
  dbl_report* rep = nullptr;
  CHECK(dbl_check_weq_whi_source(f, &rep) == DBL_E_PRECONDITION);
  dbl_fun_free(f);
}

TEST_CASE("constructions through the C surface") {
  dbl_cat *h2 = nullptr, *v2 = nullptr, *prod = nullptr, *tensor = nullptr;
  REQUIRE(dbl_cat_load("corpus:H2", &h2) == DBL_OK);
  REQUIRE(dbl_cat_load("corpus:V2", &v2) == DBL_OK);
  REQUIRE(dbl_construct_product(h2, v2, &prod) == DBL_OK);
  REQUIRE(dbl_construct_gray(h2, v2, 64, &tensor) == DBL_OK);

  dbl_fun* pi = nullptr;
  REQUIRE(dbl_construct_gray_projection(h2, v2, 64, &pi) == DBL_OK);
  dbl_report* rep = nullptr;
  REQUIRE(dbl_check_trivfib(pi, &rep) == DBL_OK);
  CHECK(dbl_report_verdict(rep) == 1);
  dbl_report_free(rep);
  dbl_fun_free(pi);

  char* summary = nullptr;
  REQUIRE(dbl_construct_whi_replacement(h2, 1, &summary) == DBL_OK);
  CHECK(take(summary).find("whi-replacement") == 0);

  dbl_cat_free(tensor);
  dbl_cat_free(prod);
  dbl_cat_free(v2);
  dbl_cat_free(h2);
}

TEST_CASE("whitehead through the C surface") {
  dbl_fun* f = nullptr;
  REQUIRE(dbl_fun_load("corpus:!:hsim:I", &f) == DBL_OK);
  dbl_report* rep = nullptr;
  REQUIRE(dbl_whitehead(f, &rep) == DBL_OK);
  CHECK(dbl_report_verdict(rep) == 1);
  dbl_report_free(rep);
  dbl_fun_free(f);

  dbl_fun* bad = nullptr;
  REQUIRE(dbl_fun_load("corpus:incl:dS-S", &bad) == DBL_OK);
  CHECK(dbl_whitehead(bad, &rep) == DBL_E_PRECONDITION);
  dbl_fun_free(bad);
}

TEST_CASE("2-category checks through the C surface") {
  dbl_twofun* f = nullptr;
  REQUIRE(dbl_twofun_load("corpus:incl:2-I", &f) == DBL_OK);
  dbl_report* rep = nullptr;
  REQUIRE(dbl_check_lackfib(f, &rep) == DBL_OK);
  CHECK(dbl_report_verdict(rep) == 0);
  dbl_report_free(rep);
  REQUIRE(dbl_check_bieq2(f, &rep) == DBL_OK);
  dbl_report_free(rep);
  dbl_twofun_free(f);
}
