#include "dblcat/corpus.hpp"

#include <map>
#include <mutex>

namespace dbl::corpus {

namespace {

DblPresentation terminal_pres() {
  DblPresentation p;
  p.name = "1";
  p.objects = {"*"};
  p.hmors = {{"h*", "*", "*", true}};
  p.vmors = {{"v*", "*", "*", true}};
  p.squares = {{"s*", "h*", "h*", "v*", "v*"}};
  p.e_squares = {{"h*", "s*"}};
  p.id_squares = {{"v*", "s*"}};
  return p;
}

DblPresentation empty_pres() {
  DblPresentation p;
  p.name = "0";
  return p;
}

DblPresentation two_points_pres() {
  DblPresentation p;
  p.name = "1+1";
  p.objects = {"p0", "p1"};
  p.hmors = {{"h0", "p0", "p0", true}, {"h1", "p1", "p1", true}};
  p.vmors = {{"v0", "p0", "p0", true}, {"v1", "p1", "p1", true}};
  p.squares = {{"s0", "h0", "h0", "v0", "v0"}, {"s1", "h1", "h1", "v1", "v1"}};
  p.e_squares = {{"h0", "s0"}, {"h1", "s1"}};
  p.id_squares = {{"v0", "s0"}, {"v1", "s1"}};
  return p;
}

DblPresentation h2_pres() {
  DblPresentation p;
  p.name = "H2";
  p.objects = {"0", "1"};
  p.hmors = {{"a", "0", "1", false}, {"h0", "0", "0", true}, {"h1", "1", "1", true}};
  p.vmors = {{"v0", "0", "0", true}, {"v1", "1", "1", true}};
  p.squares = {{"ea", "a", "a", "v0", "v1"},
               {"s0", "h0", "h0", "v0", "v0"},
               {"s1", "h1", "h1", "v1", "v1"}};
  p.e_squares = {{"a", "ea"}, {"h0", "s0"}, {"h1", "s1"}};
  p.id_squares = {{"v0", "s0"}, {"v1", "s1"}};
  return p;
}

DblPresentation v2_pres() {
  DblPresentation p;
  p.name = "V2";
  p.objects = {"0", "1"};
  p.hmors = {{"h0", "0", "0", true}, {"h1", "1", "1", true}};
  p.vmors = {{"b", "0", "1", false}, {"v0", "0", "0", true}, {"v1", "1", "1", true}};
  p.squares = {{"ib", "h0", "h1", "b", "b"},
               {"s0", "h0", "h0", "v0", "v0"},
               {"s1", "h1", "h1", "v1", "v1"}};
  p.e_squares = {{"h0", "s0"}, {"h1", "s1"}};
  p.id_squares = {{"b", "ib"}, {"v0", "s0"}, {"v1", "s1"}};
  return p;
}

// Free double category on a square: objects xy with x the horizontal and y
// the vertical coordinate.
DblPresentation s_pres(bool with_square, bool second_square) {
  DblPresentation p;
  p.name = second_square ? "S2" : (with_square ? "S" : "dS");
  p.objects = {"00", "01", "10", "11"};
  p.hmors = {{"a0", "00", "10", false}, {"a1", "01", "11", false},
             {"h00", "00", "00", true}, {"h01", "01", "01", true},
             {"h10", "10", "10", true}, {"h11", "11", "11", true}};
  p.vmors = {{"b0", "00", "01", false}, {"b1", "10", "11", false},
             {"v00", "00", "00", true}, {"v01", "01", "01", true},
             {"v10", "10", "10", true}, {"v11", "11", "11", true}};
  p.squares = {{"ea0", "a0", "a0", "v00", "v10"}, {"ea1", "a1", "a1", "v01", "v11"},
               {"ib0", "h00", "h01", "b0", "b0"}, {"ib1", "h10", "h11", "b1", "b1"},
               {"s00", "h00", "h00", "v00", "v00"}, {"s01", "h01", "h01", "v01", "v01"},
               {"s10", "h10", "h10", "v10", "v10"}, {"s11", "h11", "h11", "v11", "v11"}};
  if (with_square) p.squares.push_back({"sq", "a0", "a1", "b0", "b1"});
  if (second_square) p.squares.push_back({"sq2", "a0", "a1", "b0", "b1"});
  p.e_squares = {{"a0", "ea0"}, {"a1", "ea1"}, {"h00", "s00"}, {"h01", "s01"},
                 {"h10", "s10"}, {"h11", "s11"}};
  p.id_squares = {{"b0", "ib0"}, {"b1", "ib1"}, {"v00", "s00"}, {"v01", "s01"},
                  {"v10", "s10"}, {"v11", "s11"}};
  return p;
}

// Strict isomorphisms a : A ~ C and ap : Ap ~ Cp plus a lone vertical
// w : C -> Cp; weakly horizontally invariant fails at (a, ap, w).
DblPresentation flat_pres() {
  DblPresentation p;
  p.name = "flat";
  p.objects = {"A", "Ap", "C", "Cp"};
  p.hmors = {{"a", "A", "C", false},    {"ai", "C", "A", false},
             {"ap", "Ap", "Cp", false}, {"api", "Cp", "Ap", false},
             {"hA", "A", "A", true},    {"hAp", "Ap", "Ap", true},
             {"hC", "C", "C", true},    {"hCp", "Cp", "Cp", true}};
  p.hcomp = {{"a", "ai", "hA"}, {"ai", "a", "hC"}, {"ap", "api", "hAp"}, {"api", "ap", "hCp"}};
  p.vmors = {{"w", "C", "Cp", false},
             {"vA", "A", "A", true},
             {"vAp", "Ap", "Ap", true},
             {"vC", "C", "C", true},
             {"vCp", "Cp", "Cp", true}};
  p.squares = {{"easq", "a", "a", "vA", "vC"},     {"eaisq", "ai", "ai", "vC", "vA"},
               {"eapsq", "ap", "ap", "vAp", "vCp"}, {"eapisq", "api", "api", "vCp", "vAp"},
               {"iw", "hC", "hCp", "w", "w"},       {"sA", "hA", "hA", "vA", "vA"},
               {"sAp", "hAp", "hAp", "vAp", "vAp"}, {"sC", "hC", "hC", "vC", "vC"},
               {"sCp", "hCp", "hCp", "vCp", "vCp"}};
  p.sq_hcomp = {{"easq", "eaisq", "sA"},
                {"eaisq", "easq", "sC"},
                {"eapsq", "eapisq", "sAp"},
                {"eapisq", "eapsq", "sCp"}};
  p.e_squares = {{"a", "easq"}, {"ai", "eaisq"}, {"ap", "eapsq"}, {"api", "eapisq"},
                 {"hA", "sA"},  {"hAp", "sAp"},  {"hC", "sC"},    {"hCp", "sCp"}};
  p.id_squares = {{"w", "iw"}, {"vA", "sA"}, {"vAp", "sAp"}, {"vC", "sC"}, {"vCp", "sCp"}};
  return p;
}

TwoPresentation terminal2_pres() {
  TwoPresentation p;
  p.name = "1";
  p.objects = {"*"};
  p.cells1 = {{"f*", "*", "*", true}};
  p.cells2 = {{"i*", "f*", "f*"}};
  p.id2 = {{"f*", "i*"}};
  return p;
}

TwoPresentation arrow2_pres() {
  TwoPresentation p;
  p.name = "2";
  p.objects = {"0", "1"};
  p.cells1 = {{"a", "0", "1", false}, {"f0", "0", "0", true}, {"f1", "1", "1", true}};
  p.cells2 = {{"ia", "a", "a"}, {"i0", "f0", "f0"}, {"i1", "f1", "f1"}};
  p.id2 = {{"a", "ia"}, {"f0", "i0"}, {"f1", "i1"}};
  return p;
}

TwoPresentation walking_iso_pres() {
  TwoPresentation p;
  p.name = "I";
  p.objects = {"0", "1"};
  p.cells1 = {{"f", "0", "1", false}, {"g", "1", "0", false},
              {"f0", "0", "0", true}, {"f1", "1", "1", true}};
  p.comp1 = {{"f", "g", "f0"}, {"g", "f", "f1"}};
  p.cells2 = {{"if", "f", "f"}, {"ig", "g", "g"}, {"i0", "f0", "f0"}, {"i1", "f1", "f1"}};
  p.id2 = {{"f", "if"}, {"g", "ig"}, {"f0", "i0"}, {"f1", "i1"}};
  return p;
}

TwoPresentation cinv_pres() {
  TwoPresentation p;
  p.name = "Cinv";
  p.objects = {"0", "1"};
  p.cells1 = {{"f", "0", "1", false}, {"g", "0", "1", false},
              {"f0", "0", "0", true}, {"f1", "1", "1", true}};
  p.cells2 = {{"if", "f", "f"}, {"ig", "g", "g"}, {"i0", "f0", "f0"}, {"i1", "f1", "f1"},
              {"ph", "f", "g"}, {"phi", "g", "f"}};
  p.vcomp2 = {{"ph", "phi", "if"}, {"phi", "ph", "ig"}};
  p.id2 = {{"f", "if"}, {"g", "ig"}, {"f0", "i0"}, {"f1", "i1"}};
  return p;
}

TwoPresentation disc_pres(int n) {
  TwoPresentation p;
  p.name = "disc" + std::to_string(n);
  for (int i = 0; i < n; ++i) {
    std::string o = "d" + std::to_string(i);
    p.objects.push_back(o);
    p.cells1.push_back({"f" + o, o, o, true});
    p.cells2.push_back({"i" + o, "f" + o, "f" + o});
    p.id2.push_back({"f" + o, "i" + o});
  }
  return p;
}

std::mutex cache_mu;

}  // namespace

std::vector<std::string> two_category_names() {
  return {"1", "2", "I", "Cinv", "disc1", "disc2"};
}

TwoPtr two_category(const std::string& name) {
  static std::map<std::string, TwoPtr> cache;
  std::lock_guard lock(cache_mu);
  auto it = cache.find(name);
  if (it != cache.end()) return it->second;
  TwoPresentation p;
  if (name == "1") p = terminal2_pres();
  else if (name == "2") p = arrow2_pres();
  else if (name == "I") p = walking_iso_pres();
  else if (name == "Cinv") p = cinv_pres();
  else if (name == "disc1") p = disc_pres(1);
  else if (name == "disc2") p = disc_pres(2);
  else throw Error(ErrorCode::UnknownName, "unknown 2-category '" + name + "'");
  auto ptr = std::make_shared<FinTwoCategory>(validate_two_category(p));
  cache[name] = ptr;
  return ptr;
}

const HSim& hsim_of(const std::string& two_cat_name) {
  static std::map<std::string, HSim> cache;
  {
    std::lock_guard lock(cache_mu);
    auto it = cache.find(two_cat_name);
    if (it != cache.end()) return it->second;
  }
  auto base = two_category(two_cat_name);
  auto hs = h_sim(base);
  std::lock_guard lock(cache_mu);
  return cache.emplace(two_cat_name, std::move(hs)).first->second;
}

std::vector<std::string> double_category_names() {
  return {"0",    "1",         "1+1",     "H2",        "V2",        "S",
          "dS",   "S2",        "flat",    "quintet:I", "quintet:2", "quintet:Cinv",
          "hsim:1", "hsim:2",  "hsim:I",  "hsim:Cinv", "h:I",       "h:2",
          "h:Cinv", "v:I",     "HsimI",   "QI"};
}

DblPtr double_category(const std::string& name) {
  static std::map<std::string, DblPtr> cache;
  {
    std::lock_guard lock(cache_mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
  }
  DblPtr ptr;
  if (name == "0") ptr = std::make_shared<FinDoubleCategory>(validate_double_category(empty_pres()));
  else if (name == "1") ptr = std::make_shared<FinDoubleCategory>(validate_double_category(terminal_pres()));
  else if (name == "1+1") ptr = std::make_shared<FinDoubleCategory>(validate_double_category(two_points_pres()));
  else if (name == "H2") ptr = std::make_shared<FinDoubleCategory>(validate_double_category(h2_pres()));
  else if (name == "V2") ptr = std::make_shared<FinDoubleCategory>(validate_double_category(v2_pres()));
  else if (name == "S") ptr = std::make_shared<FinDoubleCategory>(validate_double_category(s_pres(true, false)));
  else if (name == "dS") ptr = std::make_shared<FinDoubleCategory>(validate_double_category(s_pres(false, false)));
  else if (name == "S2") ptr = std::make_shared<FinDoubleCategory>(validate_double_category(s_pres(true, true)));
  else if (name == "flat") ptr = std::make_shared<FinDoubleCategory>(validate_double_category(flat_pres()));
  else if (name == "HsimI") return double_category("hsim:I");
  else if (name == "QI") return double_category("quintet:I");
  else if (name.rfind("quintet:", 0) == 0)
    ptr = std::make_shared<FinDoubleCategory>(quintet(*two_category(name.substr(8))));
  else if (name.rfind("hsim:", 0) == 0)
    ptr = hsim_of(name.substr(5)).result;
  else if (name.rfind("h:", 0) == 0)
    ptr = std::make_shared<FinDoubleCategory>(h_embed(*two_category(name.substr(2))));
  else if (name.rfind("v:", 0) == 0)
    ptr = std::make_shared<FinDoubleCategory>(v_embed(*two_category(name.substr(2))));
  else
    throw Error(ErrorCode::UnknownName, "unknown double category '" + name + "'");
  std::lock_guard lock(cache_mu);
  cache[name] = ptr;
  return ptr;
}

std::vector<std::string> functor_names() {
  std::vector<std::string> out;
  for (const auto& n : {"1", "H2", "V2", "S", "dS", "S2", "flat", "quintet:I", "hsim:I",
                        "hsim:Cinv", "h:I", "h:2"}) {
    out.push_back(std::string("id:") + n);
    out.push_back(std::string("!:") + n);
  }
  out.insert(out.end(), {"incl:dS-S", "i1", "i2", "i3", "i4", "i5", "J:1", "J:2", "J:I",
                         "J:Cinv", "pr1:H2,V2", "pr2:H2,V2"});
  return out;
}

DoubleFunctor functor(const std::string& name) {
  if (name.rfind("id:", 0) == 0) return identity_functor(double_category(name.substr(3)));
  if (name.rfind("!:", 0) == 0)
    return collapse_to_terminal(double_category(name.substr(2)), double_category("1"));
  if (name == "incl:dS-S" || name == "i4")
    return inclusion_functor(double_category("dS"), double_category("S"),
                             name == "i4" ? "i4" : "incl:dS-S");
  if (name == "i1") {
    DoubleFunctor f;
    f.name = "i1";
    f.source = double_category("0");
    f.target = double_category("1");
    return f;
  }
  if (name == "i2" || name == "i3") {
    auto src = double_category("1+1");
    auto tgt = double_category(name == "i2" ? "H2" : "V2");
    RawMaps maps;
    maps.objects = {{"p0", "0"}, {"p1", "1"}};
    maps.hmors = {{"h0", "h0"}, {"h1", "h1"}};
    maps.vmors = {{"v0", "v0"}, {"v1", "v1"}};
    maps.squares = {{"s0", "s0"}, {"s1", "s1"}};
    return validate_double_functor(src, tgt, maps, name);
  }
  if (name == "i5") {
    auto src = double_category("S2");
    auto tgt = double_category("S");
    RawMaps maps;
    for (Idx o = 0; o < src->n_objects(); ++o) maps.objects[src->object(o)] = src->object(o);
    for (Idx i = 0; i < src->n_hmors(); ++i) maps.hmors[src->hmor(i).id] = src->hmor(i).id;
    for (Idx i = 0; i < src->n_vmors(); ++i) maps.vmors[src->vmor(i).id] = src->vmor(i).id;
    for (Idx i = 0; i < src->n_squares(); ++i) {
      const auto& id = src->square(i).id;
      maps.squares[id] = (id == "sq2") ? "sq" : id;
    }
    return validate_double_functor(src, tgt, maps, "i5");
  }
  if (name.rfind("J:", 0) == 0) {
    const auto& hs = hsim_of(name.substr(2));
    return h_sim_inclusion(hs, double_category("h:" + name.substr(2)));
  }
  if (name.rfind("pr1:", 0) == 0 || name.rfind("pr2:", 0) == 0) {
    bool first = name[2] == '1';
    auto args = name.substr(4);
    auto comma = args.find(',');
    if (comma == std::string::npos)
      throw Error(ErrorCode::UnknownName, "projection needs two factors: '" + name + "'");
    auto a = double_category(args.substr(0, comma));
    auto x = double_category(args.substr(comma + 1));
    auto prod = std::make_shared<FinDoubleCategory>(product(*a, *x));
    return product_projection(prod, first ? a : x, first);
  }
  throw Error(ErrorCode::UnknownName, "unknown double functor '" + name + "'");
}

std::vector<std::string> two_functor_names() {
  return {"id:1",     "id:2",      "id:I",     "id:Cinv", "id:disc1", "id:disc2",
          "!:2",      "!:I",       "!:Cinv",   "!:disc2", "incl:2-I", "incl:2-Cinv",
          "swap:I",   "swap:Cinv", "pt0:1-2",  "pt1:1-2", "incl:disc2-2"};
}

TwoFunctor two_functor(const std::string& name) {
  if (name.rfind("id:", 0) == 0) return identity_two_functor(two_category(name.substr(3)));
  if (name.rfind("!:", 0) == 0) {
    auto src = two_category(name.substr(2));
    auto tgt = two_category("1");
    RawTwoMaps maps;
    for (Idx o = 0; o < src->n_objects(); ++o) maps.objects[src->object(o)] = "*";
    for (Idx i = 0; i < src->n_cells1(); ++i) maps.cells1[src->cell1(i).id] = "f*";
    for (Idx i = 0; i < src->n_cells2(); ++i) maps.cells2[src->cell2(i).id] = "i*";
    return validate_two_functor(src, tgt, maps, name);
  }
  RawTwoMaps maps;
  if (name == "incl:2-I") {
    maps.objects = {{"0", "0"}, {"1", "1"}};
    maps.cells1 = {{"a", "f"}, {"f0", "f0"}, {"f1", "f1"}};
    maps.cells2 = {{"ia", "if"}, {"i0", "i0"}, {"i1", "i1"}};
    return validate_two_functor(two_category("2"), two_category("I"), maps, name);
  }
  if (name == "incl:2-Cinv") {
    maps.objects = {{"0", "0"}, {"1", "1"}};
    maps.cells1 = {{"a", "f"}, {"f0", "f0"}, {"f1", "f1"}};
    maps.cells2 = {{"ia", "if"}, {"i0", "i0"}, {"i1", "i1"}};
    return validate_two_functor(two_category("2"), two_category("Cinv"), maps, name);
  }
  if (name == "swap:I") {
    maps.objects = {{"0", "1"}, {"1", "0"}};
    maps.cells1 = {{"f", "g"}, {"g", "f"}, {"f0", "f1"}, {"f1", "f0"}};
    maps.cells2 = {{"if", "ig"}, {"ig", "if"}, {"i0", "i1"}, {"i1", "i0"}};
    return validate_two_functor(two_category("I"), two_category("I"), maps, name);
  }
  if (name == "swap:Cinv") {
    maps.objects = {{"0", "0"}, {"1", "1"}};
    maps.cells1 = {{"f", "g"}, {"g", "f"}, {"f0", "f0"}, {"f1", "f1"}};
    maps.cells2 = {{"if", "ig"}, {"ig", "if"}, {"i0", "i0"}, {"i1", "i1"},
                   {"ph", "phi"}, {"phi", "ph"}};
    return validate_two_functor(two_category("Cinv"), two_category("Cinv"), maps, name);
  }
  if (name == "pt0:1-2" || name == "pt1:1-2") {
    std::string o = name == "pt0:1-2" ? "0" : "1";
    maps.objects = {{"*", o}};
    maps.cells1 = {{"f*", "f" + o}};
    maps.cells2 = {{"i*", "i" + o}};
    return validate_two_functor(two_category("1"), two_category("2"), maps, name);
  }
  if (name == "incl:disc2-2") {
    maps.objects = {{"d0", "0"}, {"d1", "1"}};
    maps.cells1 = {{"fd0", "f0"}, {"fd1", "f1"}};
    maps.cells2 = {{"id0", "i0"}, {"id1", "i1"}};
    return validate_two_functor(two_category("disc2"), two_category("2"), maps, name);
  }
  throw Error(ErrorCode::UnknownName, "unknown 2-functor '" + name + "'");
}

}  // namespace dbl::corpus
