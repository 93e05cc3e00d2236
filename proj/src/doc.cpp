#include "dblcat/doc.hpp"

#include <fstream>
#include <sstream>

#include "dblcat/corpus.hpp"
#include "json.hpp"

namespace dbl::doc {

namespace {

std::vector<std::vector<std::string>> tokenize(const std::string& text) {
  std::vector<std::vector<std::string>> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string t;
    while (ls >> t) toks.push_back(t);
    if (!toks.empty()) lines.push_back(std::move(toks));
  }
  return lines;
}

[[noreturn]] void bad(size_t lineno, const std::string& why) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno + 1) + ": " + why);
}

struct RawDoc {
  std::string kind, name;
  std::vector<std::pair<size_t, std::vector<std::string>>> body;  // lineno + tokens
};

std::vector<RawDoc> split_docs(const std::string& text) {
  auto lines = tokenize(text);
  std::vector<RawDoc> docs;
  size_t i = 0;
  while (i < lines.size()) {
    const auto& hd = lines[i];
    if (hd.size() != 2 ||
        (hd[0] != "dblcat" && hd[0] != "twocat" && hd[0] != "dblfunctor" &&
         hd[0] != "twofunctor"))
      bad(i, "expected a document header (dblcat|twocat|dblfunctor|twofunctor NAME)");
    RawDoc d;
    d.kind = hd[0];
    d.name = hd[1];
    ++i;
    bool closed = false;
    while (i < lines.size()) {
      if (lines[i].size() == 1 && lines[i][0] == "end") {
        closed = true;
        ++i;
        break;
      }
      d.body.push_back({i, lines[i]});
      ++i;
    }
    if (!closed) bad(i - 1, "document '" + d.name + "' is missing its 'end'");
    docs.push_back(std::move(d));
  }
  if (docs.empty()) throw Error(ErrorCode::ParseError, "empty document");
  return docs;
}

DblPresentation double_from_doc(const RawDoc& d) {
  DblPresentation p;
  p.name = d.name;
  for (const auto& [ln, t] : d.body) {
    const auto& dir = t[0];
    auto need = [&](size_t n) {
      if (t.size() != n + 1) bad(ln, dir + " expects " + std::to_string(n) + " arguments");
    };
    if (dir == "objects") {
      for (size_t k = 1; k < t.size(); ++k) p.objects.push_back(t[k]);
    } else if (dir == "hmor" || dir == "vmor") {
      bool has_flag = t.size() == 5 && t[4] == "identity";
      if (t.size() != 4 && !has_flag) bad(ln, dir + " expects: id src tgt [identity]");
      DblPresentation::Mor m{t[1], t[2], t[3], has_flag};
      (dir == "hmor" ? p.hmors : p.vmors).push_back(m);
    } else if (dir == "sq") {
      need(5);
      p.squares.push_back({t[1], t[2], t[3], t[4], t[5]});
    } else if (dir == "hcomp" || dir == "vcomp" || dir == "sq_hcomp" || dir == "sq_vcomp") {
      need(3);
      DblPresentation::Comp c{t[1], t[2], t[3]};
      if (dir == "hcomp") p.hcomp.push_back(c);
      else if (dir == "vcomp") p.vcomp.push_back(c);
      else if (dir == "sq_hcomp") p.sq_hcomp.push_back(c);
      else p.sq_vcomp.push_back(c);
    } else if (dir == "esq") {
      need(2);
      p.e_squares.push_back({t[1], t[2]});
    } else if (dir == "idsq") {
      need(2);
      p.id_squares.push_back({t[1], t[2]});
    } else {
      bad(ln, "unknown directive '" + dir + "' in a dblcat document");
    }
  }
  return p;
}

TwoPresentation two_from_doc(const RawDoc& d) {
  TwoPresentation p;
  p.name = d.name;
  for (const auto& [ln, t] : d.body) {
    const auto& dir = t[0];
    auto need = [&](size_t n) {
      if (t.size() != n + 1) bad(ln, dir + " expects " + std::to_string(n) + " arguments");
    };
    if (dir == "objects") {
      for (size_t k = 1; k < t.size(); ++k) p.objects.push_back(t[k]);
    } else if (dir == "cell1") {
      bool has_flag = t.size() == 5 && t[4] == "identity";
      if (t.size() != 4 && !has_flag) bad(ln, "cell1 expects: id src tgt [identity]");
      p.cells1.push_back({t[1], t[2], t[3], has_flag});
    } else if (dir == "cell2") {
      need(3);
      p.cells2.push_back({t[1], t[2], t[3]});
    } else if (dir == "comp1" || dir == "vcomp2" || dir == "hcomp2") {
      need(3);
      TwoPresentation::Comp c{t[1], t[2], t[3]};
      if (dir == "comp1") p.comp1.push_back(c);
      else if (dir == "vcomp2") p.vcomp2.push_back(c);
      else p.hcomp2.push_back(c);
    } else if (dir == "id2") {
      need(2);
      p.id2.push_back({t[1], t[2]});
    } else {
      bad(ln, "unknown directive '" + dir + "' in a twocat document");
    }
  }
  return p;
}

struct FunctorDoc {
  std::string name, source, target;
  RawMaps maps;
  RawTwoMaps two_maps;
  bool two = false;
};

FunctorDoc functor_from_doc(const RawDoc& d) {
  FunctorDoc fd;
  fd.name = d.name;
  fd.two = d.kind == "twofunctor";
  for (const auto& [ln, t] : d.body) {
    const auto& dir = t[0];
    auto need = [&](size_t n) {
      if (t.size() != n + 1) bad(ln, dir + " expects " + std::to_string(n) + " arguments");
    };
    if (dir == "source") {
      need(1);
      fd.source = t[1];
    } else if (dir == "target") {
      need(1);
      fd.target = t[1];
    } else if (dir == "obj") {
      need(2);
      (fd.two ? fd.two_maps.objects : fd.maps.objects)[t[1]] = t[2];
    } else if (dir == "hmor" && !fd.two) {
      need(2);
      fd.maps.hmors[t[1]] = t[2];
    } else if (dir == "vmor" && !fd.two) {
      need(2);
      fd.maps.vmors[t[1]] = t[2];
    } else if (dir == "sq" && !fd.two) {
      need(2);
      fd.maps.squares[t[1]] = t[2];
    } else if (dir == "cell1" && fd.two) {
      need(2);
      fd.two_maps.cells1[t[1]] = t[2];
    } else if (dir == "cell2" && fd.two) {
      need(2);
      fd.two_maps.cells2[t[1]] = t[2];
    } else {
      bad(ln, "unknown directive '" + dir + "' in a functor document");
    }
  }
  if (fd.source.empty() || fd.target.empty())
    throw Error(ErrorCode::ParseError, "functor '" + fd.name + "' needs source and target");
  return fd;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string serialize(const FinDoubleCategory& d) {
  auto p = d.presentation();
  std::ostringstream out;
  out << "dblcat " << (p.name.empty() ? "unnamed" : p.name) << "\n";
  if (!p.objects.empty()) {
    out << "objects";
    for (const auto& o : p.objects) out << " " << o;
    out << "\n";
  }
  for (const auto& m : p.hmors)
    out << "hmor " << m.id << " " << m.src << " " << m.tgt << (m.is_id ? " identity" : "")
        << "\n";
  for (const auto& m : p.vmors)
    out << "vmor " << m.id << " " << m.src << " " << m.tgt << (m.is_id ? " identity" : "")
        << "\n";
  for (const auto& s : p.squares)
    out << "sq " << s.id << " " << s.top << " " << s.bottom << " " << s.left << " "
        << s.right << "\n";
  for (const auto& c : p.hcomp) out << "hcomp " << c.lhs << " " << c.rhs << " " << c.result << "\n";
  for (const auto& c : p.vcomp) out << "vcomp " << c.lhs << " " << c.rhs << " " << c.result << "\n";
  for (const auto& c : p.sq_hcomp)
    out << "sq_hcomp " << c.lhs << " " << c.rhs << " " << c.result << "\n";
  for (const auto& c : p.sq_vcomp)
    out << "sq_vcomp " << c.lhs << " " << c.rhs << " " << c.result << "\n";
  for (const auto& [h, s] : p.e_squares) out << "esq " << h << " " << s << "\n";
  for (const auto& [v, s] : p.id_squares) out << "idsq " << v << " " << s << "\n";
  out << "end\n";
  return out.str();
}

std::string serialize(const FinTwoCategory& c) {
  auto p = c.presentation();
  std::ostringstream out;
  out << "twocat " << (p.name.empty() ? "unnamed" : p.name) << "\n";
  if (!p.objects.empty()) {
    out << "objects";
    for (const auto& o : p.objects) out << " " << o;
    out << "\n";
  }
  for (const auto& m : p.cells1)
    out << "cell1 " << m.id << " " << m.src << " " << m.tgt << (m.is_id ? " identity" : "")
        << "\n";
  for (const auto& m : p.cells2) out << "cell2 " << m.id << " " << m.src << " " << m.tgt << "\n";
  for (const auto& e : p.comp1) out << "comp1 " << e.lhs << " " << e.rhs << " " << e.result << "\n";
  for (const auto& e : p.vcomp2)
    out << "vcomp2 " << e.lhs << " " << e.rhs << " " << e.result << "\n";
  for (const auto& e : p.hcomp2)
    out << "hcomp2 " << e.lhs << " " << e.rhs << " " << e.result << "\n";
  for (const auto& [f, a] : p.id2) out << "id2 " << f << " " << a << "\n";
  out << "end\n";
  return out.str();
}

std::string serialize(const DoubleFunctor& f) {
  std::ostringstream out;
  out << serialize(*f.source);
  out << serialize(*f.target);
  out << "dblfunctor " << f.name << "\n";
  out << "source " << f.source->name() << "\n";
  out << "target " << f.target->name() << "\n";
  for (Idx o = 0; o < f.source->n_objects(); ++o)
    out << "obj " << f.source->object(o) << " " << f.target->object(f.obj[o]) << "\n";
  for (Idx h = 0; h < f.source->n_hmors(); ++h)
    out << "hmor " << f.source->hmor(h).id << " " << f.target->hmor(f.hmor[h]).id << "\n";
  for (Idx v = 0; v < f.source->n_vmors(); ++v)
    out << "vmor " << f.source->vmor(v).id << " " << f.target->vmor(f.vmor[v]).id << "\n";
  for (Idx s = 0; s < f.source->n_squares(); ++s)
    out << "sq " << f.source->square(s).id << " " << f.target->square(f.sq[s]).id << "\n";
  out << "end\n";
  return out.str();
}

std::string serialize(const TwoFunctor& f) {
  std::ostringstream out;
  out << serialize(*f.source);
  out << serialize(*f.target);
  out << "twofunctor " << f.name << "\n";
  out << "source " << f.source->name() << "\n";
  out << "target " << f.target->name() << "\n";
  for (Idx o = 0; o < f.source->n_objects(); ++o)
    out << "obj " << f.source->object(o) << " " << f.target->object(f.obj[o]) << "\n";
  for (Idx h = 0; h < f.source->n_cells1(); ++h)
    out << "cell1 " << f.source->cell1(h).id << " " << f.target->cell1(f.c1[h]).id << "\n";
  for (Idx v = 0; v < f.source->n_cells2(); ++v)
    out << "cell2 " << f.source->cell2(v).id << " " << f.target->cell2(f.c2[v]).id << "\n";
  out << "end\n";
  return out.str();
}

DblPresentation parse_double(const std::string& text) {
  auto docs = split_docs(text);
  for (const auto& d : docs)
    if (d.kind == "dblcat") return double_from_doc(d);
  throw Error(ErrorCode::ParseError, "no dblcat document found");
}

TwoPresentation parse_two(const std::string& text) {
  auto docs = split_docs(text);
  for (const auto& d : docs)
    if (d.kind == "twocat") return two_from_doc(d);
  throw Error(ErrorCode::ParseError, "no twocat document found");
}

namespace {

DblPtr resolve_double(const std::string& spec, const std::vector<RawDoc>* local) {
  if (spec.rfind("corpus:", 0) == 0) return corpus::double_category(spec.substr(7));
  if (spec.rfind("file:", 0) == 0) return load_double(read_file(spec.substr(5)));
  if (local)
    for (const auto& d : *local)
      if (d.kind == "dblcat" && d.name == spec)
        return std::make_shared<FinDoubleCategory>(
            validate_double_category(double_from_doc(d)));
  throw Error(ErrorCode::UnknownName, "cannot resolve double category '" + spec + "'");
}

TwoPtr resolve_two(const std::string& spec, const std::vector<RawDoc>* local) {
  if (spec.rfind("corpus:", 0) == 0) return corpus::two_category(spec.substr(7));
  if (spec.rfind("file:", 0) == 0) return load_two(read_file(spec.substr(5)));
  if (local)
    for (const auto& d : *local)
      if (d.kind == "twocat" && d.name == spec)
        return std::make_shared<FinTwoCategory>(validate_two_category(two_from_doc(d)));
  throw Error(ErrorCode::UnknownName, "cannot resolve 2-category '" + spec + "'");
}

}  // namespace

DblPtr load_double(const std::string& spec) {
  if (spec.rfind("corpus:", 0) == 0 || spec.rfind("file:", 0) == 0)
    return resolve_double(spec, nullptr);
  return std::make_shared<FinDoubleCategory>(validate_double_category(parse_double(spec)));
}

TwoPtr load_two(const std::string& spec) {
  if (spec.rfind("corpus:", 0) == 0 || spec.rfind("file:", 0) == 0)
    return resolve_two(spec, nullptr);
  return std::make_shared<FinTwoCategory>(validate_two_category(parse_two(spec)));
}

DoubleFunctor load_double_functor(const std::string& text) {
  if (text.rfind("corpus:", 0) == 0) return corpus::functor(text.substr(7));
  if (text.rfind("file:", 0) == 0) return load_double_functor(read_file(text.substr(5)));
  auto docs = split_docs(text);
  for (const auto& d : docs)
    if (d.kind == "dblfunctor") {
      auto fd = functor_from_doc(d);
      auto src = resolve_double(fd.source, &docs);
      auto tgt = resolve_double(fd.target, &docs);
      return validate_double_functor(src, tgt, fd.maps, fd.name);
    }
  throw Error(ErrorCode::ParseError, "no dblfunctor document found");
}

TwoFunctor load_two_functor(const std::string& text) {
  if (text.rfind("corpus:", 0) == 0) return corpus::two_functor(text.substr(7));
  if (text.rfind("file:", 0) == 0) return load_two_functor(read_file(text.substr(5)));
  auto docs = split_docs(text);
  for (const auto& d : docs)
    if (d.kind == "twofunctor") {
      auto fd = functor_from_doc(d);
      auto src = resolve_two(fd.source, &docs);
      auto tgt = resolve_two(fd.target, &docs);
      return validate_two_functor(src, tgt, fd.two_maps, fd.name);
    }
  throw Error(ErrorCode::ParseError, "no twofunctor document found");
}

Kind peek_kind(const std::string& spec) {
  std::string text = spec;
  if (spec.rfind("file:", 0) == 0) text = read_file(spec.substr(5));
  else if (spec.rfind("corpus:", 0) == 0)
    throw Error(ErrorCode::ParseError, "peek_kind needs a document, not a corpus name");
  auto docs = split_docs(text);
  for (const auto& d : docs) {
    if (d.kind == "dblfunctor") return Kind::DoubleFunctor;
    if (d.kind == "twofunctor") return Kind::TwoFunctor;
  }
  if (docs.front().kind == "twocat") return Kind::Two;
  return Kind::Double;
}

std::string render_report_text(const CheckReport& rep) {
  std::ostringstream out;
  out << rep.check << " " << rep.subject << ": " << (rep.verdict ? "pass" : "fail") << "\n";
  for (const auto& w : rep.witnesses) {
    out << "  [" << w.condition << "]";
    for (const auto& c : w.cells) out << " " << c;
    if (!w.note.empty()) out << "  -- " << w.note;
    out << "\n";
  }
  for (const auto& fl : rep.flags) out << "  flag: " << fl << "\n";
  return out.str();
}

std::string render_report_json(const CheckReport& rep) {
  nlohmann::json j;
  j["check"] = rep.check;
  j["subject"] = rep.subject;
  j["verdict"] = rep.verdict;
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : rep.witnesses)
    j["witnesses"].push_back({{"condition", w.condition}, {"cells", w.cells}, {"note", w.note}});
  j["flags"] = rep.flags;
  return j.dump(2) + "\n";
}

CheckReport parse_report_json(const std::string& text) {
  CheckReport rep;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("bad report: ") + e.what());
  }
  rep.check = j.value("check", "");
  rep.subject = j.value("subject", "");
  rep.verdict = j.value("verdict", false);
  if (j.contains("witnesses"))
    for (const auto& w : j["witnesses"]) {
      Witness wit;
      wit.condition = w.value("condition", "");
      wit.note = w.value("note", "");
      if (w.contains("cells"))
        for (const auto& c : w["cells"]) wit.cells.push_back(c.get<std::string>());
      rep.witnesses.push_back(std::move(wit));
    }
  if (j.contains("flags"))
    for (const auto& fl : j["flags"]) rep.flags.push_back(fl.get<std::string>());
  return rep;
}

}  // namespace dbl::doc
