// Command line front end; talks to the library exclusively through the C API.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dblcat/dblcat.h"

namespace {

constexpr int kPass = 0, kFail = 1, kError = 2;

[[noreturn]] void die(dbl_status s) {
  std::cerr << "error: " << dbl_last_error() << " (status " << s << ")\n";
  std::exit(kError);
}

// Bare names are tried against the corpus first, then as file paths.
std::string resolve_spec(const std::string& arg) {
  if (arg.rfind("corpus:", 0) == 0 || arg.rfind("file:", 0) == 0) return arg;
  dbl_cat* probe = nullptr;
  if (dbl_cat_load(("corpus:" + arg).c_str(), &probe) == DBL_OK) {
    dbl_cat_free(probe);
    return "corpus:" + arg;
  }
  dbl_twocat* probe2 = nullptr;
  if (dbl_twocat_load(("corpus:" + arg).c_str(), &probe2) == DBL_OK) {
    dbl_twocat_free(probe2);
    return "corpus:" + arg;
  }
  return "file:" + arg;
}

std::string owned(char* s) {
  std::string out = s ? s : "";
  dbl_string_free(s);
  return out;
}

int print_report(dbl_report* rep, const std::string& format) {
  char* text = nullptr;
  if (auto s = dbl_report_render(rep, format.c_str(), &text)) die(s);
  std::cout << owned(text);
  int rc = dbl_report_verdict(rep) ? kPass : kFail;
  dbl_report_free(rep);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite double categories: model-structure checks and constructions"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format: text or machine")
      ->check(CLI::IsMember({"text", "machine"}));

  // validate
  std::string validate_arg;
  auto* validate = app.add_subcommand("validate", "validate a document and echo it canonically");
  validate->add_option("input", validate_arg, "file path or document spec")->required();

  // check
  std::string check_kind;
  std::vector<std::string> check_args;
  int depth = 2;
  auto* check = app.add_subcommand("check", "run a model-structure check");
  check->add_option("kind", check_kind, "dblbieq|whi|trivfib|jwinj|cofibrant|lackfib|bieq2|weq|weqk")
      ->required();
  check->add_option("args", check_args, "subject (spec, or: gray-proj A X)")->required();
  check->add_option("--depth", depth, "truncation depth for weqk");

  // construct
  std::string cons_kind;
  std::vector<std::string> cons_args;
  int cap = 64;
  int cons_depth = 2;
  auto* construct = app.add_subcommand("construct", "build an object and print it");
  construct->add_option("kind", cons_kind, "product|gray|gray-proj|hsim|quintet|transpose|whi")
      ->required();
  construct->add_option("args", cons_args, "factors / base object")->required();
  construct->add_option("--cap", cap, "word cap for gray");
  construct->add_option("--depth", cons_depth, "truncation depth for whi");

  // whitehead
  std::string wh_arg;
  auto* whitehead = app.add_subcommand("whitehead", "run the constructive Whitehead inverse");
  whitehead->add_option("functor", wh_arg, "double functor spec")->required();

  // explain
  std::string explain_arg;
  auto* explain = app.add_subcommand("explain", "pretty-print a machine report");
  explain->add_option("report", explain_arg, "report file (machine format)")->required();

  CLI11_PARSE(app, argc, argv);

  if (*validate) {
    std::string spec = resolve_spec(validate_arg);
    dbl_cat* c = nullptr;
    if (dbl_cat_load(spec.c_str(), &c) == DBL_OK) {
      char* text = nullptr;
      if (auto s = dbl_cat_serialize(c, &text)) die(s);
      std::cout << owned(text);
      dbl_cat_free(c);
      return kPass;
    }
    dbl_twocat* t = nullptr;
    if (dbl_twocat_load(spec.c_str(), &t) == DBL_OK) {
      char* text = nullptr;
      if (auto s = dbl_twocat_serialize(t, &text)) die(s);
      std::cout << owned(text);
      dbl_twocat_free(t);
      return kPass;
    }
    dbl_fun* f = nullptr;
    if (auto s = dbl_fun_load(spec.c_str(), &f)) die(s);
    char* text = nullptr;
    if (auto s = dbl_fun_serialize(f, &text)) die(s);
    std::cout << owned(text);
    dbl_fun_free(f);
    return kPass;
  }

  if (*check) {
    auto load_fun = [&](const std::string& arg) {
      dbl_fun* f = nullptr;
      if (check_args.size() == 3 && check_args[0] == "gray-proj") {
        dbl_cat *a = nullptr, *x = nullptr;
        if (auto s = dbl_cat_load(resolve_spec(check_args[1]).c_str(), &a)) die(s);
        if (auto s = dbl_cat_load(resolve_spec(check_args[2]).c_str(), &x)) die(s);
        if (auto s = dbl_construct_gray_projection(a, x, cap, &f)) die(s);
        dbl_cat_free(a);
        dbl_cat_free(x);
      } else {
        if (auto s = dbl_fun_load(resolve_spec(arg).c_str(), &f)) die(s);
      }
      return f;
    };
    dbl_report* rep = nullptr;
    if (check_kind == "whi" || check_kind == "cofibrant") {
      dbl_cat* c = nullptr;
      if (auto s = dbl_cat_load(resolve_spec(check_args[0]).c_str(), &c)) die(s);
      auto s = check_kind == "whi" ? dbl_check_whi(c, &rep) : dbl_check_cofibrant(c, &rep);
      if (s) die(s);
      dbl_cat_free(c);
    } else if (check_kind == "lackfib" || check_kind == "bieq2") {
      dbl_twofun* f = nullptr;
      if (auto s = dbl_twofun_load(resolve_spec(check_args[0]).c_str(), &f)) die(s);
      auto s = check_kind == "lackfib" ? dbl_check_lackfib(f, &rep) : dbl_check_bieq2(f, &rep);
      if (s) die(s);
      dbl_twofun_free(f);
    } else if (check_kind == "dblbieq" || check_kind == "trivfib" || check_kind == "jwinj" ||
               check_kind == "weq" || check_kind == "weqk") {
      dbl_fun* f = load_fun(check_args[0]);
      dbl_status s;
      if (check_kind == "dblbieq") s = dbl_check_dblbieq(f, &rep);
      else if (check_kind == "trivfib") s = dbl_check_trivfib(f, &rep);
      else if (check_kind == "jwinj") s = dbl_check_jwinj(f, &rep);
      else if (check_kind == "weq") s = dbl_check_weq_whi_source(f, &rep);
      else s = dbl_check_weq_truncated(f, depth, &rep);
      if (s) die(s);
      dbl_fun_free(f);
    } else {
      std::cerr << "error: unknown check '" << check_kind << "'\n";
      return kError;
    }
    return print_report(rep, format);
  }

  if (*construct) {
    auto print_cat = [&](dbl_cat* c) {
      char* text = nullptr;
      if (auto s = dbl_cat_serialize(c, &text)) die(s);
      std::cout << owned(text);
      dbl_cat_free(c);
      return kPass;
    };
    if (cons_kind == "product" || cons_kind == "gray") {
      if (cons_args.size() != 2) {
        std::cerr << "error: " << cons_kind << " needs two factors\n";
        return kError;
      }
      dbl_cat *a = nullptr, *x = nullptr, *r = nullptr;
      if (auto s = dbl_cat_load(resolve_spec(cons_args[0]).c_str(), &a)) die(s);
      if (auto s = dbl_cat_load(resolve_spec(cons_args[1]).c_str(), &x)) die(s);
      auto s = cons_kind == "product" ? dbl_construct_product(a, x, &r)
                                      : dbl_construct_gray(a, x, cap, &r);
      if (s) die(s);
      dbl_cat_free(a);
      dbl_cat_free(x);
      return print_cat(r);
    }
    if (cons_kind == "gray-proj") {
      dbl_cat *a = nullptr, *x = nullptr;
      dbl_fun* f = nullptr;
      if (auto s = dbl_cat_load(resolve_spec(cons_args[0]).c_str(), &a)) die(s);
      if (auto s = dbl_cat_load(resolve_spec(cons_args[1]).c_str(), &x)) die(s);
      if (auto s = dbl_construct_gray_projection(a, x, cap, &f)) die(s);
      char* text = nullptr;
      if (auto s = dbl_fun_serialize(f, &text)) die(s);
      std::cout << owned(text);
      dbl_cat_free(a);
      dbl_cat_free(x);
      dbl_fun_free(f);
      return kPass;
    }
    if (cons_kind == "hsim" || cons_kind == "quintet") {
      dbl_twocat* t = nullptr;
      dbl_cat* r = nullptr;
      if (auto s = dbl_twocat_load(resolve_spec(cons_args[0]).c_str(), &t)) die(s);
      auto s = cons_kind == "hsim" ? dbl_construct_hsim(t, &r) : dbl_construct_quintet(t, &r);
      if (s) die(s);
      dbl_twocat_free(t);
      return print_cat(r);
    }
    if (cons_kind == "transpose") {
      dbl_cat *c = nullptr, *r = nullptr;
      if (auto s = dbl_cat_load(resolve_spec(cons_args[0]).c_str(), &c)) die(s);
      if (auto s = dbl_construct_transpose(c, &r)) die(s);
      dbl_cat_free(c);
      return print_cat(r);
    }
    if (cons_kind == "whi") {
      dbl_cat* c = nullptr;
      if (auto s = dbl_cat_load(resolve_spec(cons_args[0]).c_str(), &c)) die(s);
      char* text = nullptr;
      if (auto s = dbl_construct_whi_replacement(c, cons_depth, &text)) die(s);
      std::cout << owned(text);
      dbl_cat_free(c);
      return kPass;
    }
    std::cerr << "error: unknown construction '" << cons_kind << "'\n";
    return kError;
  }

  if (*whitehead) {
    dbl_fun* f = nullptr;
    if (auto s = dbl_fun_load(resolve_spec(wh_arg).c_str(), &f)) die(s);
    dbl_report* rep = nullptr;
    if (auto s = dbl_whitehead(f, &rep)) die(s);
    dbl_fun_free(f);
    return print_report(rep, format);
  }

  if (*explain) {
    std::ifstream in(explain_arg);
    if (!in) {
      std::cerr << "error: cannot read '" << explain_arg << "'\n";
      return kError;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    dbl_report* rep = nullptr;
    if (auto s = dbl_report_parse(ss.str().c_str(), &rep)) die(s);
    char* text = nullptr;
    if (auto s = dbl_report_render(rep, "text", &text)) die(s);
    std::cout << owned(text);
    int rc = dbl_report_verdict(rep) ? kPass : kFail;
    dbl_report_free(rep);
    return rc;
  }

  return kError;
}
