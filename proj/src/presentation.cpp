#include "ainfty/presentation.hpp"

#include <fstream>
#include <sstream>

namespace ainfty {

std::string split_object_name(int level, const std::string& label) {
    return "X^" + std::to_string(level) + "(" + label + ")";
}

namespace {

struct Lines {
    std::vector<std::pair<int, std::vector<std::string>>> rows; // line number + tokens
};

Lines tokenize(const std::string& text) {
    Lines out;
    std::istringstream is(text);
    std::string line;
    int ln = 0;
    while (std::getline(is, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t)
            toks.push_back(t);
        if (!toks.empty())
            out.rows.push_back({ln, std::move(toks)});
    }
    return out;
}

int parse_int(const std::string& s, int line, int col) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, col, "expected integer, got '" + s + "'");
    }
}

} // namespace

AinfCategory parse_presentation(const std::string& text) {
    Lines lines = tokenize(text);
    if (lines.rows.empty() || lines.rows[0].second[0] != "ainf")
        throw ParseError(1, 1, "expected header 'ainf v1'");
    if (lines.rows[0].second.size() < 2 || lines.rows[0].second[1] != "v1")
        throw ParseError(lines.rows[0].first, 2, "unsupported version");

    AinfCategory cat;
    std::vector<std::string> labels;
    bool have_window = false;
    int wlo = 0, whi = 0;

    struct MuRow {
        int line;
        std::vector<std::string> ins, outs;
    };
    std::vector<MuRow> mu_rows;
    struct GenRow {
        int line;
        std::string id, src, dst;
        int c, a;
    };
    std::vector<GenRow> gen_rows;
    struct ShiftRow {
        int line;
        std::string from, to;
    };
    std::vector<ShiftRow> shift_rows;

    for (size_t r = 1; r < lines.rows.size(); ++r) {
        int ln = lines.rows[r].first;
        const auto& t = lines.rows[r].second;
        const std::string& kw = t[0];
        if (kw == "name") {
            if (t.size() != 2)
                throw ParseError(ln, 1, "name takes one identifier");
            cat.name = t[1];
        } else if (kw == "split") {
            if (t.size() < 2)
                throw ParseError(ln, 1, "split needs at least one label");
            labels.assign(t.begin() + 1, t.end());
        } else if (kw == "window") {
            if (t.size() != 3)
                throw ParseError(ln, 1, "window <lo> <hi>");
            wlo = parse_int(t[1], ln, 2);
            whi = parse_int(t[2], ln, 3);
            if (whi < wlo)
                throw ParseError(ln, 2, "empty window");
            have_window = true;
        } else if (kw == "equivariant") {
            cat.shift_equivariant = true;
        } else if (kw == "object") {
            if (t.size() != 2)
                throw ParseError(ln, 1, "object <name>");
            cat.add_object({t[1], std::nullopt});
        } else if (kw == "gen") {
            if (t.size() != 6)
                throw ParseError(ln, 1, "gen <id> <src> <dst> <c> <a>");
            gen_rows.push_back({ln, t[1], t[2], t[3], parse_int(t[4], ln, 5), parse_int(t[5], ln, 6)});
        } else if (kw == "shift") {
            if (t.size() != 3)
                throw ParseError(ln, 1, "shift <gen> <gen>");
            shift_rows.push_back({ln, t[1], t[2]});
        } else if (kw == "mu") {
            if (t.size() < 4)
                throw ParseError(ln, 1, "mu <d> | ins | outs");
            int d = parse_int(t[1], ln, 2);
            if (t[2] != "|")
                throw ParseError(ln, 3, "expected '|'");
            MuRow row{ln, {}, {}};
            size_t i = 3;
            for (; i < t.size() && t[i] != "|"; ++i)
                row.ins.push_back(t[i]);
            if (static_cast<int>(row.ins.size()) != d)
                throw ParseError(ln, 3, "arity " + std::to_string(d) + " but " +
                                            std::to_string(row.ins.size()) + " inputs");
            if (i == t.size())
                throw ParseError(ln, static_cast<int>(i), "expected second '|'");
            for (++i; i < t.size(); ++i)
                row.outs.push_back(t[i]);
            mu_rows.push_back(std::move(row));
        } else {
            throw ParseError(ln, 1, "unknown directive '" + kw + "'");
        }
    }

    if (!labels.empty()) {
        if (!have_window)
            throw ParseError(1, 1, "split requires a window");
        if (!cat.objects.empty())
            throw ParseError(1, 1, "split and explicit objects are mutually exclusive");
        cat.window = {wlo, whi};
        for (int n = wlo; n <= whi; ++n)
            for (const auto& l : labels)
                cat.add_object({split_object_name(n, l), SplitKey{n, l}});
    }

    for (const auto& g : gen_rows) {
        int s = cat.object_index(g.src);
        if (s < 0)
            throw ParseError(g.line, 3, "unknown object '" + g.src + "'");
        int d = cat.object_index(g.dst);
        if (d < 0)
            throw ParseError(g.line, 4, "unknown object '" + g.dst + "'");
        if (cat.gen_index(g.id) >= 0)
            throw ParseError(g.line, 2, "duplicate generator '" + g.id + "'");
        cat.add_gen({g.id, s, d, {g.c, g.a}});
    }

    auto parse_mor = [&](const std::string& s, int line) -> Mor {
        if (s.size() > 3 && s.rfind("e(", 0) == 0 && s.back() == ')') {
            std::string obj = s.substr(2, s.size() - 3);
            int x = cat.object_index(obj);
            if (x < 0)
                throw Error(ErrKind::DanglingId,
                            "unit of unknown object '" + obj + "' (line " + std::to_string(line) + ")");
            return unit_of(x);
        }
        int g = cat.gen_index(s);
        if (g < 0)
            throw Error(ErrKind::DanglingId, "unknown morphism id '" + s + "' (line " + std::to_string(line) + ")");
        return g;
    };

    for (const auto& row : mu_rows) {
        std::vector<Mor> in;
        for (const auto& s : row.ins) {
            Mor m = parse_mor(s, row.line);
            if (is_unit(m))
                throw ParseError(row.line, 1, "units are implicit and may not appear as mu inputs");
            in.push_back(m);
        }
        Combo out;
        for (const auto& s : row.outs)
            combo_xor_one(out, parse_mor(s, row.line));
        cat.add_mu(std::move(in), std::move(out));
    }

    for (const auto& row : shift_rows) {
        int g1 = cat.gen_index(row.from);
        int g2 = cat.gen_index(row.to);
        if (g1 < 0 || g2 < 0)
            throw Error(ErrKind::DanglingId, "shift row references unknown generator (line " +
                                                 std::to_string(row.line) + ")");
        cat.shift_map[g1] = g2;
    }

    cat.finalize();
    return cat;
}

AinfCategory load_presentation(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw Error(ErrKind::Parse, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_presentation(ss.str());
}

std::string print_presentation(const AinfCategory& cat) {
    std::ostringstream os;
    os << "ainf v1\n";
    os << "name " << cat.name << "\n";
    if (cat.has_split() && cat.window) {
        // recover label order from the first window row
        os << "split";
        for (const auto& o : cat.objects) {
            if (o.split->level != cat.window->first)
                break;
            os << ' ' << o.split->label;
        }
        os << "\n";
        os << "window " << cat.window->first << ' ' << cat.window->second << "\n";
        if (cat.shift_equivariant)
            os << "equivariant\n";
    } else {
        if (cat.shift_equivariant)
            os << "equivariant\n";
        for (const auto& o : cat.objects)
            os << "object " << o.name << "\n";
    }
    for (const auto& g : cat.gens)
        os << "gen " << g.id << ' ' << cat.objects[static_cast<size_t>(g.src)].name << ' '
           << cat.objects[static_cast<size_t>(g.dst)].name << ' ' << g.deg.c << ' ' << g.deg.a << "\n";
    for (const auto& [g1, g2] : cat.shift_map)
        os << "shift " << cat.mor_name(g1) << ' ' << cat.mor_name(g2) << "\n";
    for (const auto& [in, out] : cat.mu) {
        os << "mu " << in.size() << " |";
        for (Mor m : in)
            os << ' ' << cat.mor_name(m);
        os << " |";
        for (Mor m : out)
            os << ' ' << cat.mor_name(m);
        os << "\n";
    }
    return os.str();
}

} // namespace ainfty

namespace ainfty {

namespace {

struct MapDoc {
    std::string kind;
    int degree = 0;
    std::vector<std::pair<std::string, std::string>> objs;
    struct Comp {
        int line;
        std::vector<std::string> ins, outs;
    };
    std::vector<Comp> comps;
    struct BiComp {
        int line;
        std::vector<std::string> xs, zs, outs;
        std::string u;
    };
    std::vector<BiComp> bicomps;
};

MapDoc parse_map_doc(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw Error(ErrKind::Parse, "cannot open '" + path + "'");
    MapDoc doc;
    std::string line;
    int ln = 0;
    bool header = false;
    while (std::getline(f, line)) {
        ++ln;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        std::istringstream ls(line);
        std::vector<std::string> t;
        std::string tok;
        while (ls >> tok)
            t.push_back(tok);
        if (t.empty())
            continue;
        if (!header) {
            if (t.size() < 2 || t[0] != "ainfmap" || t[1] != "v1")
                throw ParseError(ln, 1, "expected header 'ainfmap v1'");
            header = true;
            continue;
        }
        if (t[0] == "kind" && t.size() == 2) {
            doc.kind = t[1];
        } else if (t[0] == "degree" && t.size() == 2) {
            doc.degree = parse_int(t[1], ln, 2);
        } else if (t[0] == "obj" && t.size() == 3) {
            doc.objs.push_back({t[1], t[2]});
        } else if (t[0] == "comp" && t.size() >= 4) {
            int d = parse_int(t[1], ln, 2);
            if (t[2] != "|")
                throw ParseError(ln, 3, "expected '|'");
            MapDoc::Comp c;
            c.line = ln;
            size_t i = 3;
            for (; i < t.size() && t[i] != "|"; ++i)
                c.ins.push_back(t[i]);
            if (static_cast<int>(c.ins.size()) != d)
                throw ParseError(ln, 3, "arity mismatch");
            if (i == t.size())
                throw ParseError(ln, static_cast<int>(i), "expected second '|'");
            for (++i; i < t.size(); ++i)
                c.outs.push_back(t[i]);
            doc.comps.push_back(std::move(c));
        } else if (t[0] == "bicomp" && t.size() >= 6) {
            int p = parse_int(t[1], ln, 2);
            int q = parse_int(t[2], ln, 3);
            MapDoc::BiComp c;
            c.line = ln;
            size_t i = 3;
            if (t[i] != "|")
                throw ParseError(ln, static_cast<int>(i), "expected '|'");
            for (++i; i < t.size() && t[i] != "|"; ++i)
                c.xs.push_back(t[i]);
            if (static_cast<int>(c.xs.size()) != p)
                throw ParseError(ln, 4, "p mismatch");
            if (i == t.size())
                throw ParseError(ln, static_cast<int>(i), "expected '|' before u");
            ++i;
            if (i >= t.size())
                throw ParseError(ln, static_cast<int>(i), "missing u");
            c.u = t[i];
            ++i;
            if (i >= t.size() || t[i] != "|")
                throw ParseError(ln, static_cast<int>(i), "expected '|' after u");
            for (++i; i < t.size() && t[i] != "|"; ++i)
                c.zs.push_back(t[i]);
            if (static_cast<int>(c.zs.size()) != q)
                throw ParseError(ln, 5, "q mismatch");
            if (i == t.size())
                throw ParseError(ln, static_cast<int>(i), "expected '|' before outputs");
            for (++i; i < t.size(); ++i)
                c.outs.push_back(t[i]);
            doc.bicomps.push_back(std::move(c));
        } else {
            throw ParseError(ln, 1, "unknown directive '" + t[0] + "'");
        }
    }
    return doc;
}

Mor parse_mor_in(const AinfCategory& cat, const std::string& s, int line) {
    if (s.size() > 3 && s.rfind("e(", 0) == 0 && s.back() == ')') {
        std::string obj = s.substr(2, s.size() - 3);
        int x = cat.object_index(obj);
        if (x < 0)
            throw Error(ErrKind::DanglingId,
                        "unit of unknown object '" + obj + "' (line " + std::to_string(line) + ")");
        return unit_of(x);
    }
    int g = cat.gen_index(s);
    if (g < 0)
        throw Error(ErrKind::DanglingId, "unknown morphism id '" + s + "' (line " + std::to_string(line) + ")");
    return g;
}

} // namespace

AinfFunctor load_functor(const std::string& path, CatPtr src, CatPtr dst) {
    MapDoc doc = parse_map_doc(path);
    if (doc.kind != "functor")
        throw Error(ErrKind::Parse, path + " is not a functor map file");
    AinfFunctor f;
    f.name = path;
    f.src = src;
    f.dst = dst;
    f.obj_map.assign(src->objects.size(), -1);
    for (const auto& [so, dobj] : doc.objs) {
        int si = src->object_index(so);
        int di = dst->object_index(dobj);
        if (si < 0 || di < 0)
            throw Error(ErrKind::DanglingId, "unknown object in obj row: " + so + " -> " + dobj);
        f.obj_map[static_cast<size_t>(si)] = di;
    }
    for (int i = 0; i < static_cast<int>(f.obj_map.size()); ++i)
        if (f.obj_map[static_cast<size_t>(i)] < 0)
            throw Error(ErrKind::DanglingId,
                        "object " + src->objects[static_cast<size_t>(i)].name + " has no image");
    for (const auto& c : doc.comps) {
        std::vector<Mor> in;
        for (const auto& s : c.ins) {
            Mor m = parse_mor_in(*src, s, c.line);
            if (is_unit(m))
                throw ParseError(c.line, 1, "units may not appear as component inputs");
            in.push_back(m);
        }
        Combo out;
        for (const auto& s : c.outs)
            combo_xor_one(out, parse_mor_in(*dst, s, c.line));
        f.add_comp(std::move(in), std::move(out));
    }
    f.finalize();
    return f;
}

BimoduleMap load_bimodule_map(const std::string& path, std::shared_ptr<const HomBimodule> src,
                              std::shared_ptr<const HomBimodule> dst) {
    MapDoc doc = parse_map_doc(path);
    if (doc.kind != "bimodule")
        throw Error(ErrKind::Parse, path + " is not a bimodule map file");
    BimoduleMap f(src, dst, doc.degree);
    const AinfCategory& c = src->cat();
    for (const auto& bc : doc.bicomps) {
        BimoduleMap::Key k;
        for (const auto& s : bc.xs)
            k.xs.push_back(parse_mor_in(c, s, bc.line));
        k.u = parse_mor_in(c, bc.u, bc.line);
        for (const auto& s : bc.zs)
            k.zs.push_back(parse_mor_in(c, s, bc.line));
        Combo out;
        for (const auto& s : bc.outs)
            combo_xor_one(out, parse_mor_in(dst->cat(), s, bc.line));
        f.add_comp(std::move(k), std::move(out));
    }
    return f;
}

} // namespace ainfty
