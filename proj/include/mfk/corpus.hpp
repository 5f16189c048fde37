#pragma once

#include "mfk/hom.hpp"
#include "mfk/mf.hpp"
#include "mfk/weights.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace mfk {

/// Expanded grading data of one listed object.
struct GradingData {
    std::vector<long long> s, sbar;  // absolute h-scaled entries, descending
    Rat hphi;                        // subscript (h * phi); 0 when absent
    bool has_subscript = false;
};

/// Parses the compact grading notation:
///   (q1,...,qn)_{p}         pairs [q,-q,...], sbar = s
///   (q1,...;qb1,...)_{p}    pairs on both parts
///   [a,b,...]_{p}           explicit list, sbar = s
///   [a,...;ab,...]_{p}      explicit lists
/// Items allow multiplicities v^m and parenthesized values (-3/2)^2; the
/// subscript may be _{p}, _{p/q} or _p and defaults to 0.
inline GradingData parse_grading(const std::string& text, long long h) {
    size_t pos = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw MfkError("ParseError", "grading '" + text + "': " + msg);
    };
    auto skip = [&] {
        while (pos < text.size() && text[pos] == ' ') ++pos;
    };
    auto parse_value = [&]() -> Rat {
        skip();
        bool paren = pos < text.size() && text[pos] == '(';
        if (paren) ++pos;
        skip();
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
        if (start == pos) fail("expected number");
        Rat v = parse_rat(text.substr(start, pos - start));
        if (paren) {
            skip();
            if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
            ++pos;
        }
        return v;
    };
    auto parse_list = [&](std::vector<Rat>& out, char closer) {
        for (;;) {
            Rat v = parse_value();
            long long mult = 1;
            skip();
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                size_t start = pos;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
                if (start == pos) fail("expected multiplicity");
                mult = std::stoll(text.substr(start, pos - start));
            }
            for (long long k = 0; k < mult; ++k) out.push_back(v);
            skip();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            break;
        }
        skip();
        if (pos >= text.size() || (text[pos] != closer && text[pos] != ';')) fail("expected list end");
    };

    skip();
    if (pos >= text.size()) fail("empty");
    bool compact = text[pos] == '(';
    char closer = compact ? ')' : ']';
    if (!compact && text[pos] != '[') fail("expected '(' or '['");
    ++pos;
    std::vector<Rat> first, second;
    parse_list(first, closer);
    bool has_second = text[pos] == ';';
    if (has_second) {
        ++pos;
        parse_list(second, closer);
    }
    if (pos >= text.size() || text[pos] != closer) fail("unterminated list");
    ++pos;
    GradingData g;
    skip();
    if (pos < text.size() && text[pos] == '_') {
        ++pos;
        skip();
        bool brace = pos < text.size() && text[pos] == '{';
        if (brace) ++pos;
        size_t start = pos;
        if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
        while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
        if (start == pos) fail("expected subscript value");
        g.hphi = parse_rat(text.substr(start, pos - start));
        g.has_subscript = true;
        if (brace) {
            if (pos >= text.size() || text[pos] != '}') fail("expected '}'");
            ++pos;
        }
    }
    skip();
    if (pos != text.size()) fail("trailing input");

    auto expand = [&](const std::vector<Rat>& vals) {
        std::vector<long long> out;
        for (const Rat& v : vals) {
            if (compact) {
                for (const Rat& w : {v, Rat(-v)}) {
                    Rat abs = w + g.hphi;
                    if (denominator(abs) != 1) fail("non-integer absolute grading");
                    out.push_back(to_ll(numerator(abs)));
                }
            } else {
                Rat abs = v + g.hphi;
                if (denominator(abs) != 1) fail("non-integer absolute grading");
                out.push_back(to_ll(numerator(abs)));
            }
        }
        std::sort(out.rbegin(), out.rend());
        return out;
    };
    g.s = expand(first);
    g.sbar = has_second ? expand(second) : g.s;
    (void)h;
    return g;
}

struct Erratum {
    std::string object, block;  // block: q0 | q1 | grading
    int row = 0, col = 0;       // 1-based as printed; unused for grading
    std::string printed, corrected, justification;
};

struct CaseObjectData {
    std::string name;
    std::string grading_raw;
    bool has_q = false;
    std::string q_ref;  // reuse matrices of the named object
    std::vector<std::vector<std::string>> q0_raw, q1_raw;  // q1_raw empty => q1 = q0
    // replacement matrices for objects whose printed form is beyond
    // entry-level repair; used instead of q0_raw/q1_raw under overlay
    std::vector<std::vector<std::string>> q0_replacement, q1_replacement;
    std::string replacement_note;
    std::string note;
};

struct CaseEntry {
    std::string id;
    WeightSystem w;
    std::string f_raw;
    std::vector<long long> sig;
    std::vector<std::string> params;
    std::map<std::string, CaseObjectData> objects;
    std::vector<Erratum> errata;
    std::string note;

    long long r() const { return static_cast<long long>(sig.size()); }
    long long alpha(int arm) const { return sig[static_cast<size_t>(arm - 1)]; }  // 1-based arm
    static std::string arm_object_name(int i, int j) {
        return "V_" + std::to_string(i) + "_" + std::to_string(j);
    }
};

inline CaseEntry load_case_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw MfkError("ParseError", "cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw MfkError("ParseError", path.string() + ": " + e.what());
    }
    CaseEntry c;
    c.id = j.at("id").get<std::string>();
    auto ws = j.at("weights");
    c.w = WeightSystem(ws.at(0).get<long long>(), ws.at(1).get<long long>(), ws.at(2).get<long long>(),
                       j.at("h").get<long long>());
    c.f_raw = j.at("f").get<std::string>();
    for (const auto& a : j.at("signature")) c.sig.push_back(a.get<long long>());
    if (j.contains("parameters"))
        for (const auto& p : j.at("parameters")) c.params.push_back(p.get<std::string>());
    if (j.contains("note")) c.note = j.at("note").get<std::string>();
    for (const auto& [name, obj] : j.at("objects").items()) {
        CaseObjectData o;
        o.name = name;
        o.grading_raw = obj.at("grading").get<std::string>();
        if (obj.contains("q_ref")) {
            o.q_ref = obj.at("q_ref").get<std::string>();
            o.has_q = true;
        } else if (obj.contains("q0")) {
            o.has_q = true;
            for (const auto& row : obj.at("q0")) {
                std::vector<std::string> r;
                for (const auto& e : row) r.push_back(e.get<std::string>());
                o.q0_raw.push_back(std::move(r));
            }
            if (obj.contains("q1")) {
                for (const auto& row : obj.at("q1")) {
                    std::vector<std::string> r;
                    for (const auto& e : row) r.push_back(e.get<std::string>());
                    o.q1_raw.push_back(std::move(r));
                }
            }
            if (obj.contains("q0_replacement")) {
                for (const auto& row : obj.at("q0_replacement")) {
                    std::vector<std::string> r;
                    for (const auto& e : row) r.push_back(e.get<std::string>());
                    o.q0_replacement.push_back(std::move(r));
                }
                if (obj.contains("q1_replacement"))
                    for (const auto& row : obj.at("q1_replacement")) {
                        std::vector<std::string> r;
                        for (const auto& e : row) r.push_back(e.get<std::string>());
                        o.q1_replacement.push_back(std::move(r));
                    }
                if (obj.contains("replacement_note"))
                    o.replacement_note = obj.at("replacement_note").get<std::string>();
            }
        }
        if (obj.contains("note")) o.note = obj.at("note").get<std::string>();
        c.objects[name] = std::move(o);
    }
    if (j.contains("errata"))
        for (const auto& e : j.at("errata")) {
            Erratum er;
            er.object = e.at("object").get<std::string>();
            er.block = e.at("block").get<std::string>();
            if (e.contains("row")) er.row = e.at("row").get<int>();
            if (e.contains("col")) er.col = e.at("col").get<int>();
            er.printed = e.at("printed").get<std::string>();
            er.corrected = e.at("corrected").get<std::string>();
            if (e.contains("justification")) er.justification = e.at("justification").get<std::string>();
            c.errata.push_back(std::move(er));
        }
    return c;
}

inline std::vector<std::filesystem::path> corpus_files(const std::filesystem::path& dir) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir / "cases"))
        if (entry.path().extension() == ".json") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

inline std::vector<CaseEntry> load_corpus(const std::filesystem::path& dir) {
    std::vector<CaseEntry> out;
    for (const auto& f : corpus_files(dir)) out.push_back(load_case_file(f));
    return out;
}

inline std::filesystem::path default_data_dir() {
#ifdef MFK_DATA_DIR
    return MFK_DATA_DIR;
#else
    return "data";
#endif
}

inline bool resolve_grading_order(GradedMF& F);

/// Materializes the (Q,S) of one object. overlay=true applies errata.
/// Grading strings are expanded and attached in the order solved from the
/// entry degrees (descending as the fallback).
struct BuiltObject {
    GradedMF mf;
    bool has_matrices = false;
    std::vector<std::string> problems;  // parse errors etc. (raw mode)
};

inline std::string erratum_applied(const CaseEntry& c, const std::string& object, const std::string& block,
                                   int row, int col, const std::string& raw, bool overlay) {
    if (!overlay) return raw;
    for (const auto& e : c.errata)
        if (e.object == object && e.block == block && e.row == row && e.col == col) return e.corrected;
    return raw;
}

inline std::string grading_string(const CaseEntry& c, const std::string& object, bool overlay) {
    const auto& raw = c.objects.at(object).grading_raw;
    if (!overlay) return raw;
    for (const auto& e : c.errata)
        if (e.object == object && e.block == "grading") return e.corrected;
    return raw;
}

inline BuiltObject build_object(const CaseEntry& c, const std::string& name, bool overlay) {
    BuiltObject out;
    const CaseObjectData* obj = &c.objects.at(name);
    GradingData g = parse_grading(grading_string(c, name, overlay), c.w.h);
    const CaseObjectData* qsrc = obj;
    std::string qname = name;
    if (!obj->q_ref.empty()) {
        qsrc = &c.objects.at(obj->q_ref);
        qname = obj->q_ref;
    }
    out.mf.w = c.w;
    out.mf.f = Polynomial::parse(c.f_raw);
    out.mf.s = g.s;
    out.mf.sbar = g.sbar;
    if (!qsrc->has_q || qsrc->q0_raw.empty()) return out;  // grading-only
    out.has_matrices = true;
    bool use_replacement = overlay && !qsrc->q0_replacement.empty();
    const auto& q0src = use_replacement ? qsrc->q0_replacement : qsrc->q0_raw;
    const auto& q1src = use_replacement ? qsrc->q1_replacement : qsrc->q1_raw;
    int r = static_cast<int>(q0src.size());
    out.mf.q0 = pm_zero(r, r);
    out.mf.q1 = pm_zero(r, r);
    auto fill = [&](const std::vector<std::vector<std::string>>& raw, const char* block, PolyMat& dst) {
        for (int i = 0; i < r; ++i)
            for (int jj = 0; jj < static_cast<int>(raw[static_cast<size_t>(i)].size()); ++jj) {
                std::string entry =
                    erratum_applied(c, qname, block, i + 1, jj + 1, raw[static_cast<size_t>(i)][static_cast<size_t>(jj)], overlay);
                try {
                    dst[static_cast<size_t>(i)][static_cast<size_t>(jj)] = Polynomial::parse(entry);
                } catch (const MfkError& e) {
                    out.problems.push_back(std::string(block) + "[" + std::to_string(i + 1) + "][" +
                                           std::to_string(jj + 1) + "]: " + e.what());
                }
            }
    };
    fill(q0src, "q0", out.mf.q0);
    if (q1src.empty()) {
        // q1 printed as equal to q0
        fill(q0src, "q1", out.mf.q1);
    } else {
        fill(q1src, "q1", out.mf.q1);
    }
    if (out.problems.empty()) {
        GradedMF ordered = out.mf;
        if (resolve_grading_order(ordered)) out.mf = std::move(ordered);
    }
    return out;
}

/// One verification finding.
struct VerifyIssue {
    std::string case_id, object, stage, detail;
};

struct VerifyReport {
    std::vector<VerifyIssue> issues;
    int objects_checked = 0;
    int factorizations_checked = 0;
    bool ok() const { return issues.empty(); }
};

namespace detail {

/// Multiset helpers for the grading-level Auslander-Reiten consistency scan.
using Multiset = std::map<long long, int>;

inline Multiset to_multiset(const std::vector<long long>& v) {
    Multiset m;
    for (long long x : v) ++m[x];
    return m;
}
inline bool multiset_subtract(Multiset& from, const Multiset& what) {
    for (const auto& [k, n] : what) {
        auto it = from.find(k);
        if (it == from.end() || it->second < n) return false;
        it->second -= n;
        if (it->second == 0) from.erase(it);
    }
    return true;
}
/// Remaining s/sbar entries must pair up as trivial summands: (a in s with
/// a+h in sbar) or (a in s with a-h in sbar). Small backtracking search.
inline bool strip_trivial_pairs(Multiset s, Multiset sbar, long long h) {
    if (s.empty()) return sbar.empty();
    long long a = s.begin()->first;
    if (--s.begin()->second == 0) s.erase(s.begin());
    for (long long cand : {a + h, a - h}) {
        auto it = sbar.find(cand);
        if (it == sbar.end()) continue;
        Multiset sbar2 = sbar;
        auto it2 = sbar2.find(cand);
        if (--it2->second == 0) sbar2.erase(it2);
        if (strip_trivial_pairs(s, std::move(sbar2), h)) return true;
    }
    return false;
}

struct GradingRef {
    std::vector<long long> s, sbar;
};

inline GradingRef g_tau(const GradingRef& g, long long n) {
    GradingRef r = g;
    for (auto& v : r.s) v += 2 * n;
    for (auto& v : r.sbar) v += 2 * n;
    return r;
}
inline GradingRef g_T(const GradingRef& g, long long h) {
    GradingRef r;
    r.s = g.sbar;
    for (auto& v : r.s) v += h;
    r.sbar = g.s;
    for (auto& v : r.sbar) v += h;
    return r;
}
/// Gradings of cone(X -> Y).
inline GradingRef g_cone(const GradingRef& x, const GradingRef& y, long long h) {
    GradingRef r;
    r.s = x.sbar;
    for (auto& v : r.s) v += h;
    r.s.insert(r.s.end(), y.s.begin(), y.s.end());
    r.sbar = x.s;
    for (auto& v : r.sbar) v += h;
    r.sbar.insert(r.sbar.end(), y.sbar.begin(), y.sbar.end());
    return r;
}
inline GradingRef g_sum(const GradingRef& x, const GradingRef& y) {
    GradingRef r = x;
    r.s.insert(r.s.end(), y.s.begin(), y.s.end());
    r.sbar.insert(r.sbar.end(), y.sbar.begin(), y.sbar.end());
    return r;
}

/// cone(Z -> T tau Z) should equal T(expected) up to trivial pairs.
inline bool ar_mesh_ok(const GradingRef& z, const GradingRef& expected, long long h) {
    GradingRef lhs = g_cone(z, g_T(g_tau(z, 1), h), h);
    GradingRef rhs = g_T(expected, h);
    Multiset s = to_multiset(lhs.s), sbar = to_multiset(lhs.sbar);
    if (!multiset_subtract(s, to_multiset(rhs.s))) return false;
    if (!multiset_subtract(sbar, to_multiset(rhs.sbar))) return false;
    return strip_trivial_pairs(std::move(s), std::move(sbar), h);
}

}  // namespace detail

/// The bracket notation fixes the grading multisets but not their order along
/// the matrix rows/columns. This solves the assignment from the degrees of the
/// nonzero entries (s_k - sbar_l is determined wherever an entry is nonzero),
/// anchoring each connected component so the multisets match. Falls back to
/// the input order when no consistent assignment exists.
inline bool resolve_grading_order(GradedMF& F) {
    int r = F.rank();
    if (r == 0) return true;
    // nodes: 0..r-1 = s-side, r..2r-1 = sbar-side; edges fix differences
    std::vector<std::vector<std::pair<int, long long>>> adj(2 * static_cast<size_t>(r));
    auto add_edge = [&](int a, int b, long long diff) {
        // value[a] - value[b] = diff
        adj[static_cast<size_t>(a)].push_back({b, diff});
        adj[static_cast<size_t>(b)].push_back({a, -diff});
    };
    for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
            const Polynomial& e0 = F.q0[static_cast<size_t>(k)][static_cast<size_t>(l)];
            if (!e0.is_zero()) {
                long long d;
                try {
                    d = e0.euler_degree_num(F.w);
                } catch (const MfkError&) {
                    return false;
                }
                add_edge(k, r + l, d - F.w.h);  // s_k - sbar_l = d - h
            }
            const Polynomial& e1 = F.q1[static_cast<size_t>(k)][static_cast<size_t>(l)];
            if (!e1.is_zero()) {
                long long d;
                try {
                    d = e1.euler_degree_num(F.w);
                } catch (const MfkError&) {
                    return false;
                }
                add_edge(r + k, l, d - F.w.h);  // sbar_k - s_l = d - h
            }
        }
    std::vector<long long> offset(2 * static_cast<size_t>(r), 0);
    std::vector<int> comp(2 * static_cast<size_t>(r), -1);
    int ncomp = 0;
    for (int start = 0; start < 2 * r; ++start) {
        if (comp[static_cast<size_t>(start)] >= 0) continue;
        comp[static_cast<size_t>(start)] = ncomp;
        offset[static_cast<size_t>(start)] = 0;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int a = stack.back();
            stack.pop_back();
            for (const auto& [b, diff] : adj[static_cast<size_t>(a)]) {
                if (comp[static_cast<size_t>(b)] < 0) {
                    comp[static_cast<size_t>(b)] = ncomp;
                    offset[static_cast<size_t>(b)] = offset[static_cast<size_t>(a)] - diff;
                    stack.push_back(b);
                } else if (offset[static_cast<size_t>(b)] != offset[static_cast<size_t>(a)] - diff) {
                    return false;  // inconsistent degrees: genuine typo
                }
            }
        }
        ++ncomp;
    }
    // per component, choose a base value so that the union of assigned values
    // matches the stored multisets; search candidate bases per component
    detail::Multiset s_left = detail::to_multiset(F.s), sbar_left = detail::to_multiset(F.sbar);
    std::vector<long long> base(static_cast<size_t>(ncomp), 0);
    std::function<bool(int)> assign = [&](int cc) -> bool {
        if (cc == ncomp) return true;
        // candidate bases: align the first s-node (or sbar-node) of the
        // component with any remaining multiset value
        int anchor = -1;
        for (int a = 0; a < 2 * r && anchor < 0; ++a)
            if (comp[static_cast<size_t>(a)] == cc) anchor = a;
        const detail::Multiset& pool = anchor < r ? s_left : sbar_left;
        std::vector<long long> cands;
        for (const auto& [v, n] : pool) cands.push_back(v - offset[static_cast<size_t>(anchor)]);
        std::sort(cands.begin(), cands.end());
        cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
        for (long long b : cands) {
            // tentatively take values
            std::vector<std::pair<bool, long long>> taken;  // (is_s, value)
            bool ok = true;
            for (int a = 0; a < 2 * r && ok; ++a) {
                if (comp[static_cast<size_t>(a)] != cc) continue;
                long long v = offset[static_cast<size_t>(a)] + b;
                detail::Multiset& pool2 = a < r ? s_left : sbar_left;
                auto it = pool2.find(v);
                if (it == pool2.end() || it->second == 0) {
                    ok = false;
                    break;
                }
                --it->second;
                if (it->second == 0) pool2.erase(it);
                taken.push_back({a < r, v});
            }
            if (ok) {
                base[static_cast<size_t>(cc)] = b;
                if (assign(cc + 1)) return true;
            }
            for (const auto& [is_s, v] : taken) ++(is_s ? s_left : sbar_left)[v];
        }
        return false;
    };
    if (!assign(0)) return false;
    for (int k = 0; k < r; ++k) F.s[static_cast<size_t>(k)] = offset[static_cast<size_t>(k)] + base[static_cast<size_t>(comp[static_cast<size_t>(k)])];
    for (int k = 0; k < r; ++k)
        F.sbar[static_cast<size_t>(k)] = offset[static_cast<size_t>(r + k)] + base[static_cast<size_t>(comp[static_cast<size_t>(r + k)])];
    return true;
}

/// Validates every stored factorization (raw or with errata overlay), checks
/// phase subscripts and runs the grading-level AR-mesh scan.
inline VerifyReport verify_corpus(const std::vector<CaseEntry>& corpus, bool overlay) {
    VerifyReport rep;
    for (const CaseEntry& c : corpus) {
        // chi-derived invariants
        ChiResult chi = chi_series(c.w);
        if (chi.verdict != ChiVerdict::Regular) {
            rep.issues.push_back({c.id, "-", "weights", "not a regular system"});
            continue;
        }
        Signature sig = signature(c.w, chi.data->genus_a0);
        if (sig.alphas != c.sig)
            rep.issues.push_back({c.id, "-", "weights", "stored signature differs from computed"});

        std::map<std::string, detail::GradingRef> gradings;
        for (const auto& [name, obj] : c.objects) {
            ++rep.objects_checked;
            GradingData g;
            try {
                g = parse_grading(grading_string(c, name, overlay), c.w.h);
            } catch (const MfkError& e) {
                rep.issues.push_back({c.id, name, "grading", e.what()});
                continue;
            }
            if (g.s.size() != g.sbar.size()) {
                rep.issues.push_back({c.id, name, "grading", "s and sbar lengths differ"});
                continue;
            }
            for (long long v : g.s)
                if (v % 2)
                    rep.issues.push_back({c.id, name, "grading", "odd s entry " + std::to_string(v)});
            for (long long v : g.sbar)
                if ((v + c.w.h) % 2)
                    rep.issues.push_back({c.id, name, "grading", "sbar entry with wrong parity " + std::to_string(v)});
            gradings[name] = detail::GradingRef{g.s, g.sbar};
            // phase vs subscript
            if (g.has_subscript) {
                long long tr = 0;
                for (long long v : g.s) tr += v;
                for (long long v : g.sbar) tr += v;
                if (Rat(Int(tr), Int(2LL * static_cast<long long>(g.s.size()))) != g.hphi)
                    rep.issues.push_back({c.id, name, "phase", "Tr(S)/(2r) differs from printed subscript"});
            }

            const CaseObjectData& obj_data = obj;
            if (obj_data.has_q) {
                ++rep.factorizations_checked;
                BuiltObject built = build_object(c, name, overlay);
                for (const auto& p : built.problems) rep.issues.push_back({c.id, name, "parse", p});
                if (built.problems.empty() && built.has_matrices) {
                    if (static_cast<int>(built.mf.s.size()) != pm_rows(built.mf.q0)) {
                        rep.issues.push_back({c.id, name, "shape", "grading length differs from matrix size"});
                    } else {
                        ValidationReport v = validate(built.mf);
                        if (!v.ok()) rep.issues.push_back({c.id, name, "validate", v.summary()});
                    }
                }
            }
        }

        // AR-mesh scan on grading data (only meaningful after overlay)
        if (overlay) {
            auto has = [&](const std::string& n) { return gradings.count(n) != 0; };
            auto phase_of = [&](const std::string& n) {
                const auto& g = gradings[n];
                long long tr = 0;
                for (long long v : g.s) tr += v;
                for (long long v : g.sbar) tr += v;
                return Rat(Int(tr), Int(2LL * static_cast<long long>(g.s.size()) * c.w.h));
            };
            if (has("V0") && has("V1")) {
                if (!detail::ar_mesh_ok(gradings["V0"], gradings["V1"], c.w.h))
                    rep.issues.push_back({c.id, "V1", "mesh", "AR(V0) grading mesh mismatch with V1"});
                if (phase_of("V0") != Rat(-1, 2) - Rat(1, c.w.h))
                    rep.issues.push_back({c.id, "V0", "phase", "phi(V0) != -1/2 - 1/h"});
                if (phase_of("V1") != Rat(-1, 2))
                    rep.issues.push_back({c.id, "V1", "phase", "phi(V1) != -1/2"});
            }
            for (int arm = 1; arm <= static_cast<int>(c.sig.size()); ++arm) {
                long long alpha = c.alpha(arm);
                for (long long j = alpha; j >= 2; --j) {
                    std::string nm = CaseEntry::arm_object_name(arm, static_cast<int>(j));
                    if (!has(nm)) {
                        rep.issues.push_back({c.id, nm, "coverage", "object missing from grading table"});
                        continue;
                    }
                    if (phase_of(nm) != Rat(Int(j - 1), Int(c.w.h)))
                        rep.issues.push_back({c.id, nm, "phase", "phi(V_{i,j}) != (j-1)/h"});
                    // AR mesh: AR(V_{i,j}) = tau V_{i,j-1} (+) V_{i,j+1}
                    if (j >= 3) {
                        std::string below = CaseEntry::arm_object_name(arm, static_cast<int>(j) - 1);
                        std::string above = CaseEntry::arm_object_name(arm, static_cast<int>(j) + 1);
                        if (!has(below)) continue;
                        detail::GradingRef expect = detail::g_tau(gradings[below], 1);
                        if (j < alpha && has(above)) expect = detail::g_sum(expect, gradings[above]);
                        if (!detail::ar_mesh_ok(gradings[nm], expect, c.w.h))
                            rep.issues.push_back({c.id, nm, "mesh", "arm AR mesh mismatch at j=" + std::to_string(j)});
                    }
                }
            }
        }
    }
    return rep;
}

/// Solves for unknown matrix entries (given by errata positions) from the
/// factorization identity; used to justify errata records. Returns the unique
/// homogeneous solutions, or nullopt if the linear system is not uniquely
/// solvable from the entries where the unknowns occur linearly.
inline std::optional<std::vector<Polynomial>> solve_entries(
    const GradedMF& F, const std::vector<std::tuple<std::string, int, int>>& unknowns,
    int param_bound = 0) {
    // variables: coefficients of each unknown entry over its graded piece,
    // dressed with parameter powers l1^a l2^b up to param_bound
    struct Slot {
        bool in_q0;
        int row, col;
        std::vector<Monomial> basis;
        int offset;
    };
    std::vector<Slot> slots;
    int nvars = 0;
    for (const auto& [block, row, col] : unknowns) {
        bool in_q0 = block == "q0";
        long long deg = in_q0 ? F.w.h + F.s[static_cast<size_t>(row)] - F.sbar[static_cast<size_t>(col)]
                              : F.w.h + F.sbar[static_cast<size_t>(row)] - F.s[static_cast<size_t>(col)];
        std::vector<Monomial> plain = detail::piece_monomials(deg, F.w);
        std::vector<Monomial> dressed;
        for (const Monomial& m : plain)
            for (int a = 0; a <= param_bound; ++a)
                for (int b = 0; b <= param_bound; ++b) {
                    Monomial mm = m;
                    mm[3] = static_cast<uint16_t>(a);
                    mm[4] = static_cast<uint16_t>(b);
                    dressed.push_back(mm);
                }
        Slot s{in_q0, row, col, std::move(dressed), nvars};
        nvars += static_cast<int>(s.basis.size());
        slots.push_back(std::move(s));
    }
    auto is_unknown = [&](bool in_q0, int i, int j) {
        for (const auto& s : slots)
            if (s.in_q0 == in_q0 && s.row == i && s.col == j) return true;
        return false;
    };
    // equations from product cells linear in the unknowns
    int total = nvars + 1;  // last column carries the constant part
    SparseRref system(total);
    auto scan_product = [&](bool q0_first) {
        int r = F.rank();
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                // cell (i,j) of (first * second)
                int unknown_factors = 0;
                for (int m = 0; m < r; ++m) {
                    bool u1 = is_unknown(q0_first, i, m);
                    bool u2 = is_unknown(!q0_first, m, j);
                    if (u1 && u2) unknown_factors += 2;  // quadratic cell
                    else if (u1 || u2) unknown_factors += 1;
                }
                bool quadratic = false;
                for (int m = 0; m < r; ++m)
                    if (is_unknown(q0_first, i, m) && is_unknown(!q0_first, m, j)) quadratic = true;
                if (quadratic) continue;
                if (unknown_factors == 0) continue;  // no information
                // accumulate: sum_m first[i][m]*second[m][j] = f * delta_ij
                std::map<Monomial, SparseRow> rows;  // per product monomial
                auto add_poly = [&](const Polynomial& p, int var /* -1 = constant */) {
                    for (const auto& [m, cc] : p.terms()) {
                        if (var < 0) rows[m].emplace_back(nvars, cc);
                        else rows[m].emplace_back(var, cc);
                    }
                };
                for (int m = 0; m < r; ++m) {
                    const PolyMat& first = q0_first ? F.q0 : F.q1;
                    const PolyMat& second = q0_first ? F.q1 : F.q0;
                    bool u1 = is_unknown(q0_first, i, m);
                    bool u2 = is_unknown(!q0_first, m, j);
                    if (u1) {
                        // unknown * known
                        for (const auto& s : slots) {
                            if (s.in_q0 != q0_first || s.row != i || s.col != m) continue;
                            for (size_t b = 0; b < s.basis.size(); ++b) {
                                Polynomial mono(Rat(1));
                                for (int t = 0; t < kNumVars; ++t)
                                    if (s.basis[b][t]) mono *= Polynomial::variable(t, s.basis[b][t]);
                                add_poly(mono * second[static_cast<size_t>(m)][static_cast<size_t>(j)],
                                         s.offset + static_cast<int>(b));
                            }
                        }
                    } else if (u2) {
                        for (const auto& s : slots) {
                            if (s.in_q0 == q0_first || s.row != m || s.col != j) continue;
                            for (size_t b = 0; b < s.basis.size(); ++b) {
                                Polynomial mono(Rat(1));
                                for (int t = 0; t < kNumVars; ++t)
                                    if (s.basis[b][t]) mono *= Polynomial::variable(t, s.basis[b][t]);
                                add_poly(first[static_cast<size_t>(i)][static_cast<size_t>(m)] * mono,
                                         s.offset + static_cast<int>(b));
                            }
                        }
                    } else {
                        add_poly(first[static_cast<size_t>(i)][static_cast<size_t>(m)] *
                                     second[static_cast<size_t>(m)][static_cast<size_t>(j)],
                                 -1);
                    }
                }
                if (i == j) {
                    Polynomial neg = -F.f;
                    add_poly(neg, -1);
                }
                for (auto& [mono, row] : rows) {
                    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
                    SparseRow merged;
                    for (const auto& [v, cc] : row) {
                        if (!merged.empty() && merged.back().first == v) merged.back().second += cc;
                        else merged.emplace_back(v, cc);
                    }
                    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                                [](const auto& p) { return p.second == 0; }),
                                 merged.end());
                    if (!merged.empty()) system.add_row(std::move(merged));
                }
            }
    };
    scan_product(true);
    scan_product(false);

    // unique solution iff every variable column is a pivot and the constant
    // column is not.
    for (int v = 0; v < nvars; ++v)
        if (!system.is_pivot_col(v)) return std::nullopt;
    if (system.is_pivot_col(nvars)) return std::nullopt;  // inconsistent
    std::vector<Rat> values(static_cast<size_t>(nvars), Rat(0));
    for (int rr = 0; rr < system.rank(); ++rr) {
        const SparseRow& row = system.rows()[static_cast<size_t>(rr)];
        int pivot = row.front().first;
        if (pivot >= nvars) continue;
        // pivot coefficient is 1; remaining entry is the constant column
        Rat constant(0);
        for (const auto& [cc, vv] : row)
            if (cc == nvars) constant = vv;
        values[static_cast<size_t>(pivot)] = -constant;  // var + constant*1 = 0
    }
    std::vector<Polynomial> out;
    for (const auto& s : slots) {
        Polynomial p;
        for (size_t b = 0; b < s.basis.size(); ++b) {
            Rat c = values[static_cast<size_t>(s.offset) + b];
            if (c == 0) continue;
            Polynomial mono(c);
            for (int t = 0; t < kNumVars; ++t)
                if (s.basis[b][t]) mono *= Polynomial::variable(t, s.basis[b][t]);
            p += mono;
        }
        out.push_back(p);
    }
    return out;
}

}  // namespace mfk
