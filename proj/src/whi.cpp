#include "dblcat/whi.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace dbl::whi {

int VWord::gen_count() const {
  int n = 0;
  for (const auto& l : letters)
    if (l.kind != Letter::Base) ++n;
  return n;
}

std::vector<HorEquivData> enumerate_horeq(const FinDoubleCategory& d) {
  std::vector<HorEquivData> out;
  for (Idx a = 0; a < d.n_hmors(); ++a)
    for (const auto& eq : find_horizontal_equivalences(d, a))
      if (eq.adjoint) out.push_back(eq);
  return out;
}

Replacement::Replacement(DblPtr d, int depth, int cap) : base_(std::move(d)), depth_(depth) {
  horeq_ = enumerate_horeq(*base_);
  const auto& b = *base_;

  // Enumerate reduced words breadth-first; every reduced word has a unique
  // reduced proper prefix, so no deduplication is needed.
  std::deque<VWord> frontier;
  for (Idx o = 0; o < b.n_objects(); ++o) {
    VWord w{o, {}};
    words_.push_back(w);
    frontier.push_back(w);
  }
  while (!frontier.empty()) {
    VWord w = frontier.front();
    frontier.pop_front();
    Idx at = word_target(w);
    bool last_base = !w.letters.empty() && w.letters.back().kind == Letter::Base;
    auto push = [&](Letter l) {
      VWord w2 = w;
      w2.letters.push_back(l);
      words_.push_back(w2);
      frontier.push_back(w2);
      if (static_cast<int>(words_.size()) > cap)
        throw Error(ErrorCode::SaturationCapExceeded,
                    "word enumeration exceeded the cap of " + std::to_string(cap),
                    {word_id(w2)});
    };
    if (!last_base)
      for (Idx v = 0; v < b.n_vmors(); ++v)
        if (!b.vmor(v).is_id && b.vmor(v).src == at) push({Letter::Base, v});
    if (w.gen_count() < depth_)
      for (size_t e = 0; e < horeq_.size(); ++e) {
        const auto& am = b.hmor(horeq_[e].a);
        Letter last = w.letters.empty() ? Letter{} : w.letters.back();
        if (am.src == at &&
            !(last.kind == Letter::GenV && last.ref == static_cast<Idx>(e)))
          push({Letter::GenU, static_cast<Idx>(e)});
        if (am.tgt == at &&
            !(last.kind == Letter::GenU && last.ref == static_cast<Idx>(e)))
          push({Letter::GenV, static_cast<Idx>(e)});
      }
  }
  std::sort(words_.begin(), words_.end());
}

VWord Replacement::reduce(Idx src, std::vector<Letter> letters) const {
  const auto& b = *base_;
  VWord out{src, {}};
  for (const auto& l : letters) {
    if (l.kind == Letter::Base && b.vmor(l.ref).is_id) continue;
    if (!out.letters.empty()) {
      auto& last = out.letters.back();
      if (last.kind == Letter::Base && l.kind == Letter::Base) {
        Idx comp = b.vcomp(last.ref, l.ref);
        if (b.vmor(comp).is_id) out.letters.pop_back();
        else last.ref = comp;
        continue;
      }
      if (last.ref == l.ref &&
          ((last.kind == Letter::GenU && l.kind == Letter::GenV) ||
           (last.kind == Letter::GenV && l.kind == Letter::GenU))) {
        out.letters.pop_back();
        continue;
      }
    }
    out.letters.push_back(l);
  }
  return out;
}

VWord Replacement::word_of_base(Idx vmor) const {
  const auto& b = *base_;
  VWord w{b.vmor(vmor).src, {}};
  if (!b.vmor(vmor).is_id) w.letters.push_back({Letter::Base, vmor});
  return w;
}

Idx Replacement::word_target(const VWord& w) const {
  const auto& b = *base_;
  Idx at = w.src;
  for (const auto& l : w.letters) {
    switch (l.kind) {
      case Letter::Base: at = b.vmor(l.ref).tgt; break;
      case Letter::GenU: at = b.hmor(horeq_[l.ref].a).tgt; break;
      case Letter::GenV: at = b.hmor(horeq_[l.ref].a).src; break;
    }
  }
  return at;
}

Idx Replacement::word_index(const VWord& w) const {
  auto it = std::lower_bound(words_.begin(), words_.end(), w);
  if (it == words_.end() || !(*it == w)) return kNone;
  return static_cast<Idx>(it - words_.begin());
}

std::string Replacement::word_id(const VWord& w) const {
  const auto& b = *base_;
  if (w.letters.empty()) return "idw:" + b.object(w.src);
  std::string s = "[";
  for (size_t i = 0; i < w.letters.size(); ++i) {
    const auto& l = w.letters[i];
    if (i) s += ".";
    switch (l.kind) {
      case Letter::Base: s += b.vmor(l.ref).id; break;
      case Letter::GenU: s += "u" + std::to_string(l.ref); break;
      case Letter::GenV: s += "v" + std::to_string(l.ref); break;
    }
  }
  return s + "]";
}

Idx Replacement::stripped_vmor(const VWord& w) const {
  const auto& b = *base_;
  if (w.letters.empty()) return b.id_vmor(w.src);
  const auto& l = w.letters.front();
  switch (l.kind) {
    case Letter::Base: return l.ref;
    case Letter::GenU: return b.id_vmor(b.hmor(horeq_[l.ref].a).tgt);
    case Letter::GenV: return b.id_vmor(b.hmor(horeq_[l.ref].a).src);
  }
  return kNone;
}

Idx Replacement::correct_top_left(const VWord& w, Idx top) const {
  const auto& b = *base_;
  if (w.letters.empty() || w.letters.front().kind == Letter::Base) return top;
  const auto& e = horeq_[w.letters.front().ref];
  // stripping u_e prepends c_e, stripping v_e prepends a_e
  return w.letters.front().kind == Letter::GenU ? b.hcomp(e.c, top) : b.hcomp(e.a, top);
}

Idx Replacement::correct_top_right(Idx top, const VWord& w) const {
  const auto& b = *base_;
  if (w.letters.empty() || w.letters.front().kind == Letter::Base) return top;
  const auto& e = horeq_[w.letters.front().ref];
  return w.letters.front().kind == Letter::GenU ? b.hcomp(top, e.a) : b.hcomp(top, e.c);
}

HomStatus Replacement::hom_status(Idx top, Idx bottom, const VWord& l, const VWord& r) const {
  if (!single_letter(l) || !single_letter(r)) return HomStatus::Unknown;
  return squares_over(top, bottom, l, r).empty() ? HomStatus::Absent : HomStatus::Present;
}

std::vector<RepSquare> Replacement::squares_over(Idx top, Idx bottom, const VWord& l,
                                                 const VWord& r) const {
  if (!single_letter(l) || !single_letter(r))
    throw Error(ErrorCode::DepthExceeded,
                "square hom-sets over multi-letter boundaries are not represented");
  const auto& b = *base_;
  Idx ctop = correct_top_right(correct_top_left(l, top), r);
  Boundary bd{ctop, bottom, stripped_vmor(l), stripped_vmor(r)};
  std::vector<RepSquare> out;
  for (Idx core : b.squares_over(bd)) out.push_back({top, bottom, l, r, core});
  return out;
}

RepSquare Replacement::from_base(Idx base_square) const {
  const auto& bd = base_->square(base_square).bd;
  return {bd.top, bd.bottom, word_of_base(bd.left), word_of_base(bd.right), base_square};
}

std::optional<Idx> Replacement::to_base(const RepSquare& sq) const {
  auto pure = [&](const VWord& w) {
    return w.letters.empty() || w.letters.front().kind == Letter::Base;
  };
  if (!pure(sq.left) || !pure(sq.right)) return std::nullopt;
  return sq.core;
}

RepSquare Replacement::alpha(Idx datum) const {
  const auto& e = horeq_[datum];
  const auto& b = *base_;
  Idx q = b.hmor(e.a).tgt;
  // (a_e, id_Q, u_e, id); stripping the left generator gives the counit.
  return {e.a, b.id_hmor(q), VWord{b.hmor(e.a).src, {{Letter::GenU, datum}}},
          VWord{q, {}}, e.eps};
}

RepSquare Replacement::gamma(Idx datum) const {
  const auto& e = horeq_[datum];
  const auto& b = *base_;
  Idx p = b.hmor(e.a).src;
  Idx eta_inv = vertical_inverse(b, e.eta);
  return {e.c, b.id_hmor(p), VWord{b.hmor(e.a).tgt, {{Letter::GenV, datum}}},
          VWord{p, {}}, eta_inv};
}

RepSquare Replacement::alpha_weak_inverse(Idx datum) const {
  const auto& e = horeq_[datum];
  const auto& b = *base_;
  Idx q = b.hmor(e.a).tgt;
  return {e.c, b.id_hmor(q), VWord{q, {}},
          VWord{b.hmor(e.a).src, {{Letter::GenU, datum}}}, e.eps};
}

RepSquare Replacement::gamma_weak_inverse(Idx datum) const {
  const auto& e = horeq_[datum];
  const auto& b = *base_;
  Idx p = b.hmor(e.a).src;
  Idx eta_inv = vertical_inverse(b, e.eta);
  return {e.a, b.id_hmor(p), VWord{p, {}},
          VWord{b.hmor(e.a).tgt, {{Letter::GenV, datum}}}, eta_inv};
}

RepSquare Replacement::e_square(Idx hmor) const { return from_base(base_->e_square(hmor)); }

RepSquare Replacement::id_square(const Letter& l) const {
  const auto& b = *base_;
  if (l.kind == Letter::Base) return from_base(b.id_square(l.ref));
  const auto& e = horeq_[l.ref];
  Idx p = b.hmor(e.a).src, q = b.hmor(e.a).tgt;
  if (l.kind == Letter::GenU) {
    VWord w{p, {l}};
    // strip both sides: counit over (c_e ; a_e, id_Q).
    return {b.id_hmor(p), b.id_hmor(q), w, w, e.eps};
  }
  VWord w{q, {l}};
  return {b.id_hmor(q), b.id_hmor(p), w, w, vertical_inverse(b, e.eta)};
}

RepSquare Replacement::hcomp(const RepSquare& x, const RepSquare& y) const {
  const auto& b = *base_;
  if (!(x.right == y.left))
    throw Error(ErrorCode::Mismatch, "hcomp of replacement squares: sides do not match");
  Idx top = b.hcomp(x.top, y.top);
  Idx bottom = b.hcomp(x.bottom, y.bottom);
  Idx raw = b.sq_hcomp(x.core, y.core);
  const auto& m = x.right;
  if (m.letters.empty() || m.letters.front().kind == Letter::Base)
    return {top, bottom, x.left, y.right, raw};
  // A generator letter in the middle leaves a spurious unit-or-counit factor
  // between the two corrected tops; cancel it with the datum's 2-cell.
  const auto& e = horeq_[m.letters.front().ref];
  Idx lpart = correct_top_left(x.left, x.top);
  Idx rpart = correct_top_right(y.top, y.right);
  Idx fix;
  if (m.letters.front().kind == Letter::GenU) {
    // spurious a_e ; c_e : kill with eta_e
    fix = b.sq_hcomp(b.e_square(lpart), b.sq_hcomp(e.eta, b.e_square(rpart)));
  } else {
    // spurious c_e ; a_e : kill with eps_e^-1
    Idx eps_inv = vertical_inverse(b, e.eps);
    fix = b.sq_hcomp(b.e_square(lpart), b.sq_hcomp(eps_inv, b.e_square(rpart)));
  }
  return {top, bottom, x.left, y.right, b.sq_vcomp(fix, raw)};
}

bool Replacement::vcomp_supported(const RepSquare& x, const RepSquare& y) const {
  auto junction_ok = [&](const VWord& a, const VWord& b2) {
    if (a.letters.empty() || b2.letters.empty()) return true;
    return a.letters.front().kind == Letter::Base && b2.letters.front().kind == Letter::Base;
  };
  return x.bottom == y.top && junction_ok(x.left, y.left) && junction_ok(x.right, y.right);
}

RepSquare Replacement::vcomp(const RepSquare& x, const RepSquare& y) const {
  const auto& b = *base_;
  if (x.bottom != y.top)
    throw Error(ErrorCode::Mismatch, "vcomp of replacement squares: boundaries do not match");

  auto concat = [&](const VWord& w1, const VWord& w2) {
    auto letters = w1.letters;
    letters.insert(letters.end(), w2.letters.begin(), w2.letters.end());
    return reduce(w1.src, std::move(letters));
  };
  // The composite keeps the outer boundary; the peeled recursions below only
  // compute its core.
  auto rewrap = [&](const RepSquare& inner) {
    VWord l = concat(x.left, y.left);
    VWord r = concat(x.right, y.right);
    if (l.letters.size() > 1 || r.letters.size() > 1)
      throw Error(ErrorCode::DepthExceeded, "vcomp result leaves the single-letter range");
    return RepSquare{x.top, y.bottom, l, r, inner.core};
  };
  auto lstrip_for = [&](const Letter& l) {
    return l.kind == Letter::GenU ? alpha_weak_inverse(l.ref) : gamma_weak_inverse(l.ref);
  };
  auto rstrip_for = [&](const Letter& l) {
    return l.kind == Letter::GenU ? alpha(l.ref) : gamma(l.ref);
  };
  auto lcorr_of = [&](const Letter& l) {
    return l.kind == Letter::GenU ? horeq_[l.ref].c : horeq_[l.ref].a;
  };
  auto rcorr_of = [&](const Letter& l) {
    return l.kind == Letter::GenU ? horeq_[l.ref].a : horeq_[l.ref].c;
  };

  bool left_gen_lower = !y.left.letters.empty() && y.left.letters.front().kind != Letter::Base;
  bool left_gen_upper = !x.left.letters.empty() && x.left.letters.front().kind != Letter::Base;
  bool right_gen_lower =
      !y.right.letters.empty() && y.right.letters.front().kind != Letter::Base;
  bool right_gen_upper =
      !x.right.letters.empty() && x.right.letters.front().kind != Letter::Base;

  // Peel one generator letter per step off a side column; the interchange law
  // justifies stripping one row while padding the other with an e square.
  if (left_gen_lower) {
    if (!x.left.letters.empty())
      throw Error(ErrorCode::DepthExceeded, "unsupported vcomp junction on the left");
    const auto& l = y.left.letters.front();
    return rewrap(vcomp(hcomp(e_square(lcorr_of(l)), x), hcomp(lstrip_for(l), y)));
  }
  if (left_gen_upper) {
    if (!y.left.letters.empty())
      throw Error(ErrorCode::DepthExceeded, "unsupported vcomp junction on the left");
    const auto& l = x.left.letters.front();
    return rewrap(vcomp(hcomp(lstrip_for(l), x), y));
  }
  if (right_gen_lower) {
    if (!x.right.letters.empty())
      throw Error(ErrorCode::DepthExceeded, "unsupported vcomp junction on the right");
    const auto& r = y.right.letters.front();
    return rewrap(vcomp(hcomp(x, e_square(rcorr_of(r))), hcomp(y, rstrip_for(r))));
  }
  if (right_gen_upper) {
    if (!y.right.letters.empty())
      throw Error(ErrorCode::DepthExceeded, "unsupported vcomp junction on the right");
    const auto& r = x.right.letters.front();
    return rewrap(vcomp(hcomp(x, rstrip_for(r)), y));
  }

  // Base-only junctions: the cores stack directly.
  VWord l = concat(x.left, y.left);
  VWord r = concat(x.right, y.right);
  if (l.letters.size() > 1 || r.letters.size() > 1)
    throw Error(ErrorCode::DepthExceeded, "vcomp result leaves the single-letter range");
  return {x.top, y.bottom, l, r, b.sq_vcomp(x.core, y.core)};
}

PastedSquare Replacement::paste_vertical(const std::vector<RepValue>& column) const {
  if (column.empty()) throw Error(ErrorCode::Mismatch, "empty pasting column");
  PastedSquare out;
  bool first = true;
  for (const auto& cell : column) {
    Idx top, bottom;
    VWord l, r;
    bool whi;
    std::string tag;
    if (std::holds_alternative<RepSquare>(cell)) {
      const auto& s = std::get<RepSquare>(cell);
      top = s.top;
      bottom = s.bottom;
      l = s.left;
      r = s.right;
      whi = whi_invertible(s);
      tag = "rep";
    } else {
      const auto& s = std::get<PastedSquare>(cell);
      top = s.top;
      bottom = s.bottom;
      l = s.left;
      r = s.right;
      whi = s.whi_certified;
      tag = s.provenance;
    }
    if (first) {
      out.top = top;
      out.bottom = bottom;
      out.left = l;
      out.right = r;
      out.whi_certified = whi;
      out.provenance = tag;
      first = false;
      continue;
    }
    if (out.bottom != top)
      throw Error(ErrorCode::Mismatch, "pasting column does not chain");
    out.bottom = bottom;
    auto app = [&](VWord& acc, const VWord& more) {
      auto letters = acc.letters;
      letters.insert(letters.end(), more.letters.begin(), more.letters.end());
      acc = reduce(acc.src, letters);
    };
    app(out.left, l);
    app(out.right, r);
    out.whi_certified = out.whi_certified && whi;
    out.provenance += ";" + tag;
  }
  return out;
}

bool Replacement::whi_invertible(const RepSquare& sq) const {
  const auto& b = *base_;
  // Equivalence data for base horizontal morphisms works verbatim in the
  // replacement (all its squares with identity word sides are base squares).
  auto tops = find_horizontal_equivalences(b, sq.top);
  if (tops.empty()) return false;
  auto bottoms = find_horizontal_equivalences(b, sq.bottom);
  if (bottoms.empty()) return false;
  for (const auto& top : tops)
    for (const auto& bottom : bottoms) {
      for (const auto& g : squares_over(top.c, bottom.c, sq.right, sq.left)) {
        // (E1) eta over (sq | g) = id_left over eta'
        RepSquare eta = from_base(top.eta);
        RepSquare etap = from_base(bottom.eta);
        RepSquare lhs1 = vcomp(eta, hcomp(sq, g));
        Letter lid{Letter::Base, b.id_vmor(b.hmor(sq.top).src)};
        RepSquare idl = sq.left.letters.empty()
                            ? from_base(b.id_square(b.id_vmor(b.hmor(sq.top).src)))
                            : id_square(sq.left.letters.front());
        if (!vcomp_supported(idl, etap)) continue;
        RepSquare rhs1 = vcomp(idl, etap);
        if (!(lhs1 == rhs1)) continue;
        // (E2) eps over id_right = (g | sq) over eps'
        RepSquare eps = from_base(top.eps);
        RepSquare epsp = from_base(bottom.eps);
        RepSquare idr = sq.right.letters.empty()
                            ? from_base(b.id_square(b.id_vmor(b.hmor(sq.top).tgt)))
                            : id_square(sq.right.letters.front());
        RepSquare lhs2 = vcomp(eps, idr);
        RepSquare rhs2 = vcomp(hcomp(g, sq), epsp);
        if (lhs2 == rhs2) return true;
      }
    }
  return false;
}

WhiReplacement whi_truncated(DblPtr d, int depth, int cap) {
  if (depth < 0) throw Error(ErrorCode::PreconditionFailed, "depth must be non-negative");
  return WhiReplacement{Replacement(std::move(d), depth, cap)};
}

CheckReport check_whi_truncated(const Replacement& rep) {
  const auto& b = rep.base();
  CheckReport out;
  out.check = "whi-truncated";
  out.subject = b.name() + "^whi@" + std::to_string(rep.depth());
  DblAnalysis ba(b);

  for (Idx a = 0; a < b.n_hmors(); ++a) {
    if (!ba.is_equiv(a)) continue;
    for (Idx a2 = 0; a2 < b.n_hmors(); ++a2) {
      if (!ba.is_equiv(a2)) continue;
      for (const auto& w : rep.verticals()) {
        if (w.src != b.hmor(a).tgt || rep.word_target(w) != b.hmor(a2).tgt) continue;
        // Base-level lift first: exact within the represented range.
        bool found = false;
        if (w.letters.size() <= 1) {
          for (Idx u = 0; u < b.n_vmors() && !found; ++u) {
            if (b.vmor(u).src != b.hmor(a).src || b.vmor(u).tgt != b.hmor(a2).src) continue;
            for (const auto& s : rep.squares_over(a, a2, rep.word_of_base(u), w))
              if (rep.whi_invertible(s)) {
                found = true;
                break;
              }
          }
        }
        if (found) continue;
        // Constructed lift: v_e' . w . u_e with the canonical adjoint data.
        int extra = (b.hmor(a).is_id ? 0 : 1) + (b.hmor(a2).is_id ? 0 : 1);
        if (w.gen_count() + extra > rep.depth()) {
          out.flags.push_back("Unknown: lift of (" + b.hmor(a).id + "," + b.hmor(a2).id +
                              "," + rep.word_id(w) + ") would need depth " +
                              std::to_string(w.gen_count() + extra));
          out.fail("whi-depth", {b.hmor(a).id, b.hmor(a2).id, rep.word_id(w)},
                   "no lift within the truncation depth");
          continue;
        }
        std::vector<RepValue> column;
        std::vector<Letter> word;
        if (!b.hmor(a).is_id) {
          Idx e = kNone;
          for (size_t i = 0; i < rep.horeq().size() && e == kNone; ++i)
            if (rep.horeq()[i].a == a) e = static_cast<Idx>(i);
          column.push_back(rep.alpha(e));
          word.push_back({Letter::GenU, e});
        }
        for (const auto& l : w.letters) word.push_back(l);
        // identity square on the word, certified whi as a pasting of
        // identity squares
        PastedSquare idw;
        idw.top = b.id_hmor(w.src);
        idw.bottom = b.id_hmor(rep.word_target(w));
        idw.left = w;
        idw.right = w;
        idw.whi_certified = true;
        idw.provenance = "id_" + rep.word_id(w);
        if (!w.letters.empty() || column.empty()) column.push_back(idw);
        if (!b.hmor(a2).is_id) {
          Idx e2 = kNone;
          for (size_t i = 0; i < rep.horeq().size() && e2 == kNone; ++i)
            if (rep.horeq()[i].a == a2) e2 = static_cast<Idx>(i);
          // delta: (id_C', a2, v_e2, id) with core e_{a2}
          RepSquare delta{b.id_hmor(b.hmor(a2).tgt), a2,
                          VWord{b.hmor(a2).tgt, {{Letter::GenV, e2}}},
                          VWord{b.hmor(a2).tgt, {}}, b.e_square(a2)};
          column.push_back(delta);
          word.push_back({Letter::GenV, e2});
        }
        auto beta = rep.paste_vertical(column);
        if (!beta.whi_certified)
          out.fail("whi", {b.hmor(a).id, b.hmor(a2).id, rep.word_id(w)},
                   "constructed lift is not certified");
      }
    }
  }
  return out;
}

Db3Lift db3_lift_along_freely_added(const DoubleFunctor& f, const Replacement& src_rep,
                                    const Replacement& tgt_rep, const VWord& v, Idx b,
                                    Idx b2) {
  const auto& tb = tgt_rep.base();
  const auto& sb = src_rep.base();
  if (!same_category(sb, *f.source) || !same_category(tb, *f.target))
    throw Error(ErrorCode::Mismatch, "db3 lift: replacements do not match the functor");
  if (v.gen_count() != static_cast<int>(v.letters.size()))
    throw Error(ErrorCode::PreconditionFailed, "db3 lift expects a pure generator word");
  if (v.gen_count() > tgt_rep.depth())
    throw Error(ErrorCode::DepthExceeded, "word exceeds the truncation depth");
  auto bieq = is_double_biequivalence(f);
  if (!bieq.verdict)
    throw Error(ErrorCode::PreconditionFailed, "db3 lift needs a double biequivalence");

  // 1. Composite witness for v with its top equivalence f_v, pasted from the
  //    per-letter alpha/gamma witnesses.
  std::optional<RepValue> av;
  Idx fv = tb.id_hmor(v.src);
  {
    Idx at = v.src;
    for (const auto& l : v.letters) {
      const auto& e = tgt_rep.horeq()[l.ref];
      RepSquare w = l.kind == Letter::GenU ? tgt_rep.alpha(l.ref) : tgt_rep.gamma(l.ref);
      Idx piece = l.kind == Letter::GenU ? e.a : e.c;
      if (!av) {
        av = w;
        fv = tb.hcomp(fv, piece);
      } else {
        // (A_v so far | e_piece) over the next witness
        if (std::holds_alternative<RepSquare>(*av)) {
          RepSquare cur = std::get<RepSquare>(*av);
          RepSquare widened = tgt_rep.hcomp(cur, tgt_rep.e_square(piece));
          if (tgt_rep.vcomp_supported(widened, w)) {
            av = tgt_rep.vcomp(widened, w);
          } else {
            av = tgt_rep.paste_vertical({widened, w});
          }
        } else {
          PastedSquare cur = std::get<PastedSquare>(*av);
          cur.top = tb.hcomp(cur.top, piece);
          cur.bottom = tb.hcomp(cur.bottom, piece);
          cur.provenance += "|e_" + tb.hmor(piece).id;
          av = tgt_rep.paste_vertical({cur, RepValue{w}});
        }
        fv = tb.hcomp(fv, piece);
      }
      at = l.kind == Letter::GenU ? tb.hmor(e.a).tgt : tb.hmor(e.a).src;
      (void)at;
    }
  }
  Idx vtgt = tgt_rep.word_target(v);
  if (!av) {
    // Empty word: the lift is the empty source word and the witness is the
    // e square on the shared equivalence.
    if (b != b2)
      throw Error(ErrorCode::PreconditionFailed,
                  "empty word needs matching boundary equivalences");
    Idx A0 = kNone;
    for (Idx o = 0; o < sb.n_objects() && A0 == kNone; ++o)
      if (f.obj[o] == tb.hmor(b).src) A0 = o;
    if (A0 == kNone)
      throw Error(ErrorCode::PreconditionFailed, "b must start at an image object");
    Db3Lift triv;
    triv.u = VWord{A0, {}};
    triv.beta = tgt_rep.e_square(b);
    return triv;
  }

  // 2. Adjoint data for f_v and b'.
  auto fv_data = canonical_adjoint_equivalence(tb, fv);
  auto b2_data = canonical_adjoint_equivalence(tb, b2);
  if (!fv_data || !b2_data)
    throw Error(ErrorCode::ChoiceExhausted, "boundaries are not horizontal equivalences");

  // 3. db2 on the composite d' ; f_v ; b ... diagrammatically b ; f_v ; d'.
  Idx comp = tb.hcomp(tb.hcomp(b, fv), b2_data->c);
  if (tb.hmor(b).tgt != v.src || tb.hmor(b2).tgt != vtgt)
    throw Error(ErrorCode::PreconditionFailed, "b and b' must target the ends of v");
  Idx A = kNone, A2 = kNone;
  for (Idx o = 0; o < sb.n_objects(); ++o) {
    if (A == kNone && f.obj[o] == tb.hmor(b).src) A = o;
    if (A2 == kNone && f.obj[o] == tb.hmor(b2).src) A2 = o;
  }
  if (A == kNone || A2 == kNone)
    throw Error(ErrorCode::PreconditionFailed, "b and b' must start at image objects");
  Idx a_lift = kNone, psi = kNone;
  for (Idx m = 0; m < sb.n_hmors() && a_lift == kNone; ++m) {
    if (sb.hmor(m).src != A || sb.hmor(m).tgt != A2) continue;
    Boundary bd{comp, f.hmor[m], tb.id_vmor(tb.hmor(comp).src), tb.id_vmor(tb.hmor(comp).tgt)};
    for (Idx sq : tb.squares_over(bd))
      if (is_vertically_invertible(tb, sq)) {
        a_lift = m;
        psi = sq;
        break;
      }
  }
  if (a_lift == kNone)
    throw Error(ErrorCode::ChoiceExhausted, "db2 lift of the composite equivalence failed");

  // 4. Freely added source generator for (the canonical adjoint data of) a.
  auto a_data = canonical_adjoint_equivalence(sb, a_lift);
  if (!a_data)
    throw Error(ErrorCode::ChoiceExhausted, "db2 lift is not an equivalence in the source");
  Idx src_datum = kNone;
  for (size_t i = 0; i < src_rep.horeq().size(); ++i)
    if (src_rep.horeq()[i] == *a_data) src_datum = static_cast<Idx>(i);
  if (src_datum == kNone)
    throw Error(ErrorCode::Internal, "canonical adjoint data missing from HorEq");
  VWord u{A, {{Letter::GenU, src_datum}}};

  // image datum in the target replacement
  HorEquivData img{f.hmor[a_data->a], f.hmor[a_data->c], f.sq[a_data->eta], f.sq[a_data->eps],
                   true};
  Idx img_datum = kNone;
  for (size_t i = 0; i < tgt_rep.horeq().size(); ++i)
    if (tgt_rep.horeq()[i] == img) img_datum = static_cast<Idx>(i);
  if (img_datum == kNone)
    throw Error(ErrorCode::Internal, "image datum missing from target HorEq");

  // 5. Assemble the witness: rows r1..r4 of the freely-added-lift pasting.
  Idx gv = fv_data->c;
  RepSquare r1 = tgt_rep.hcomp(tgt_rep.e_square(b), tgt_rep.from_base(fv_data->eta));
  Idx eps2_inv = vertical_inverse(tb, b2_data->eps);
  RepSquare r2 = tgt_rep.hcomp(
      tgt_rep.e_square(b),
      tgt_rep.hcomp(tgt_rep.e_square(fv),
                    tgt_rep.hcomp(tgt_rep.from_base(eps2_inv), tgt_rep.e_square(gv))));
  RepSquare r3 = tgt_rep.hcomp(tgt_rep.from_base(psi),
                               tgt_rep.hcomp(tgt_rep.e_square(b2), tgt_rep.e_square(gv)));
  // r4 = alpha_{img} | e_{b'} | gamma'_v
  RepSquare left4 = tgt_rep.hcomp(tgt_rep.alpha(img_datum), tgt_rep.e_square(b2));
  Db3Lift out;
  out.u = u;
  if (v.letters.size() <= 1) {
    RepSquare g4 = v.letters.empty()
                       ? tgt_rep.from_base(tb.id_square(tb.id_vmor(v.src)))
                       : (v.letters.front().kind == Letter::GenU
                              ? tgt_rep.alpha_weak_inverse(v.letters.front().ref)
                              : tgt_rep.gamma_weak_inverse(v.letters.front().ref));
    RepSquare r4 = tgt_rep.hcomp(left4, g4);
    RepSquare beta = tgt_rep.vcomp(tgt_rep.vcomp(r1, r2), tgt_rep.vcomp(r3, r4));
    out.beta = beta;
  } else {
    PastedSquare g4;
    g4.top = fv_data->c;
    g4.bottom = tb.id_hmor(vtgt);
    g4.left = VWord{tb.hmor(fv_data->c).src, {}};
    g4.right = v;
    g4.whi_certified = true;
    g4.provenance = "weak-inverse(A_v)";
    PastedSquare r4;
    r4.top = tb.hcomp(tb.hcomp(f.hmor[a_data->a], b2), fv_data->c);
    r4.bottom = b2;
    r4.left = VWord{f.obj[sb.hmor(a_data->a).src], {{Letter::GenU, img_datum}}};
    r4.right = v;
    r4.whi_certified = true;
    r4.provenance = "alpha|e|" + g4.provenance;
    out.beta =
        tgt_rep.paste_vertical({RepValue{r1}, RepValue{r2}, RepValue{r3}, RepValue{r4}});
    (void)left4;
  }
  return out;
}

CheckReport is_weak_equivalence_truncated(const DoubleFunctor& f, int depth) {
  auto src_whi = is_whi(*f.source);
  if (src_whi.verdict) {
    auto rep = is_weak_equivalence_whi_source(f);
    rep.check = "weq-truncated";
    return rep;
  }
  CheckReport rep;
  rep.check = "weq-truncated";
  rep.subject = f.name;
  rep.flags.push_back("DepthBounded");

  Replacement ra(f.source, depth);
  Replacement rb(f.target, depth);
  const auto& sb = *f.source;
  const auto& tb = *f.target;

  // db1, db2 and db4 only involve horizontal data and base squares, on which
  // the replacement unit is the identity.
  auto base_rep = is_double_biequivalence(f);
  for (const auto& w : base_rep.witnesses)
    if (w.condition == "db1" || w.condition == "db2" || w.condition == "db4")
      rep.witnesses.push_back(w);

  // db3 over vertical words of the target replacement.
  for (const auto& w : rb.verticals()) {
    // (i) exact letterwise lift
    bool lifted = false;
    {
      std::vector<Letter> img;
      bool ok = true;
      for (const auto& l : w.letters) {
        if (l.kind == Letter::Base) {
          Idx pre = kNone;
          for (Idx u = 0; u < sb.n_vmors() && pre == kNone; ++u)
            if (f.vmor[u] == l.ref && !sb.vmor(u).is_id) pre = u;
          if (pre == kNone) {
            ok = false;
            break;
          }
          img.push_back({Letter::Base, pre});
        } else {
          const auto& e = rb.horeq()[l.ref];
          Idx pre = kNone;
          for (size_t i = 0; i < ra.horeq().size() && pre == kNone; ++i) {
            const auto& se = ra.horeq()[i];
            if (f.hmor[se.a] == e.a && f.hmor[se.c] == e.c && f.sq[se.eta] == e.eta &&
                f.sq[se.eps] == e.eps)
              pre = static_cast<Idx>(i);
          }
          if (pre == kNone) {
            ok = false;
            break;
          }
          img.push_back({l.kind, pre});
        }
      }
      if (ok) {
        Idx so = kNone;
        for (Idx o = 0; o < sb.n_objects() && so == kNone; ++o)
          if (f.obj[o] == w.src) so = o;
        if (so != kNone) lifted = true;
      }
    }
    if (lifted) continue;
    // (ii) single-letter words: exhaustive search within the represented range
    if (w.letters.size() <= 1) {
      bool found = false;
      DblAnalysis ta(tb);
      for (Idx u = 0; u < sb.n_vmors() && !found; ++u) {
        Idx fa = f.obj[sb.vmor(u).src], fa2 = f.obj[sb.vmor(u).tgt];
        for (Idx bh = 0; bh < tb.n_hmors() && !found; ++bh) {
          if (tb.hmor(bh).src != w.src || tb.hmor(bh).tgt != fa) continue;
          if (!ta.is_equiv(bh)) continue;
          for (Idx bh2 = 0; bh2 < tb.n_hmors() && !found; ++bh2) {
            if (tb.hmor(bh2).src != rb.word_target(w) || tb.hmor(bh2).tgt != fa2) continue;
            if (!ta.is_equiv(bh2)) continue;
            for (const auto& s : rb.squares_over(bh, bh2, w, rb.word_of_base(f.vmor[u])))
              if (rb.whi_invertible(s)) {
                found = true;
                break;
              }
          }
        }
      }
      if (!found)
        rep.fail("db3", {rb.word_id(w)}, "no lift within the represented range");
      continue;
    }
    rep.fail("db3", {rb.word_id(w)}, "word beyond the exactly represented range");
    rep.flags.push_back("Unknown: " + rb.word_id(w));
  }
  return rep;
}

}  // namespace dbl::whi
