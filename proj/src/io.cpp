#include "atomnfa/io.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "atomnfa/errors.hpp"

namespace atomnfa {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

// A '#' opens a comment only at the start of a line or after whitespace;
// mid-token it is an ordinary character (symbol names like J#0 use it).
void strip_comment(std::string& raw) {
    for (std::size_t i = 0; i < raw.size(); ++i)
        if (raw[i] == '#' && (i == 0 || raw[i - 1] == ' ' || raw[i - 1] == '\t')) {
            raw.erase(i);
            return;
        }
}

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        strip_comment(raw);
        std::istringstream ls(raw);
        std::vector<std::string> tokens;
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
        if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
    }
    return lines;
}

int to_int(const std::string& s, const std::string& file, int line) {
    try {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError(file, line, "expected an integer, got '" + s + "'");
    }
}

struct Cursor {
    const std::vector<Line>& lines;
    const std::string& file;
    std::size_t at = 0;

    bool done() const { return at >= lines.size(); }
    const Line& peek() const {
        if (done()) throw ParseError(file, lines.empty() ? 1 : lines.back().number,
                                     "unexpected end of input");
        return lines[at];
    }
    const Line& next() {
        const Line& l = peek();
        ++at;
        return l;
    }
};

Bits parse_bit_row(const std::string& tok, int width, const std::string& file,
                   int line) {
    if (static_cast<int>(tok.size()) != width)
        throw ParseError(file, line, "expected a row of " +
                         std::to_string(width) + " bits");
    Bits b(width);
    for (int i = 0; i < width; ++i) {
        if (tok[i] == '1') b.set(i);
        else if (tok[i] != '0')
            throw ParseError(file, line, "rows must consist of 0/1");
    }
    return b;
}

}  // namespace

Automaton parse_automaton(const std::string& text, const std::string& filename) {
    auto lines = tokenize(text);
    Cursor cur{lines, filename};

    const Line& head = cur.next();
    if (head.tokens[0] != "type" || head.tokens.size() != 2 ||
        (head.tokens[1] != "dfa" && head.tokens[1] != "nfa"))
        throw ParseError(filename, head.number, "expected 'type dfa' or 'type nfa'");
    bool is_dfa = head.tokens[1] == "dfa";

    const Line& al = cur.next();
    if (al.tokens[0] != "alphabet" || al.tokens.size() < 2)
        throw ParseError(filename, al.number, "expected 'alphabet <sym>...'");
    Alphabet alpha;
    try {
        alpha = Alphabet(std::vector<std::string>(al.tokens.begin() + 1,
                                                  al.tokens.end()));
    } catch (const Error& e) {
        throw ParseError(filename, al.number, e.what());
    }

    const Line& sl = cur.next();
    if (sl.tokens[0] != "states" || sl.tokens.size() != 2)
        throw ParseError(filename, sl.number, "expected 'states <n>'");
    int nstates = to_int(sl.tokens[1], filename, sl.number);
    if (nstates < 0) throw ParseError(filename, sl.number, "negative state count");

    const Line& il = cur.next();
    if (il.tokens[0] != "init")
        throw ParseError(filename, il.number, "expected 'init <i> ...'");
    std::vector<int> inits;
    for (std::size_t i = 1; i < il.tokens.size(); ++i)
        inits.push_back(to_int(il.tokens[i], filename, il.number));
    if (is_dfa && inits.size() != 1)
        throw ParseError(filename, il.number, "a dfa needs exactly one init");

    const Line& fl = cur.next();
    if (fl.tokens[0] != "final")
        throw ParseError(filename, fl.number, "expected 'final <i> ...'");
    std::vector<int> finals;
    for (std::size_t i = 1; i < fl.tokens.size(); ++i)
        finals.push_back(to_int(fl.tokens[i], filename, fl.number));

    struct Edge { int src, sym, dst, line; };
    std::vector<Edge> edges;
    while (!cur.done()) {
        const Line& tl = cur.next();
        if (tl.tokens[0] != "trans" || tl.tokens.size() != 4)
            throw ParseError(filename, tl.number, "expected 'trans <src> <sym> <dst>'");
        int src = to_int(tl.tokens[1], filename, tl.number);
        int sym = alpha.index_of(tl.tokens[2]);
        if (sym < 0)
            throw ParseError(filename, tl.number, "unknown symbol '" + tl.tokens[2] + "'");
        int dst = to_int(tl.tokens[3], filename, tl.number);
        if (src < 0 || src >= nstates || dst < 0 || dst >= nstates)
            throw ParseError(filename, tl.number, "state index out of range");
        edges.push_back({src, sym, dst, tl.number});
    }

    try {
        if (is_dfa) {
            std::vector<int> trans(nstates * alpha.size(), -1);
            for (const Edge& e : edges) {
                int& cell = trans[e.src * alpha.size() + e.sym];
                if (cell != -1)
                    throw ParseError(filename, e.line, "duplicate dfa transition");
                cell = e.dst;
            }
            for (int c = 0; c < nstates * alpha.size(); ++c)
                if (trans[c] == -1)
                    throw ParseError(filename, head.number,
                                     "dfa transition table is not total");
            return Dfa::make(alpha, nstates, inits[0], finals, std::move(trans));
        }
        std::vector<std::vector<int>> cells(nstates * alpha.size());
        for (const Edge& e : edges)
            cells[e.src * alpha.size() + e.sym].push_back(e.dst);
        return Nfa::make(alpha, nstates, inits, finals, cells);
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(filename, head.number, e.what());
    }
}

namespace {

void write_header(std::ostringstream& out, const char* type,
                  const Alphabet& alpha, int states) {
    out << "type " << type << "\n" << "alphabet";
    for (const auto& s : alpha.symbols) out << " " << s;
    out << "\n" << "states " << states << "\n";
}

}  // namespace

std::string write_dfa(const Dfa& d) {
    std::ostringstream out;
    write_header(out, "dfa", d.alphabet, d.state_count);
    out << "init " << d.init << "\n" << "final";
    d.finals.for_each([&](int f) { out << " " << f; });
    out << "\n";
    for (int s = 0; s < d.state_count; ++s)
        for (int a = 0; a < d.alphabet.size(); ++a)
            out << "trans " << s << " " << d.alphabet.symbols[a] << " "
                << d.step(s, a) << "\n";
    return out.str();
}

std::string write_nfa(const Nfa& n) {
    std::ostringstream out;
    write_header(out, "nfa", n.alphabet, n.state_count);
    out << "init";
    n.inits.for_each([&](int i) { out << " " << i; });
    out << "\n" << "final";
    n.finals.for_each([&](int f) { out << " " << f; });
    out << "\n";
    for (int s = 0; s < n.state_count; ++s)
        for (int a = 0; a < n.alphabet.size(); ++a)
            n.step(s, a).for_each([&](int dst) {
                out << "trans " << s << " " << n.alphabet.symbols[a] << " "
                    << dst << "\n";
            });
    return out.str();
}

FinLattice parse_lattice(const std::string& text, const std::string& filename) {
    auto lines = tokenize(text);
    Cursor cur{lines, filename};
    const Line& head = cur.next();
    if (head.tokens[0] != "lattice" || head.tokens.size() != 2)
        throw ParseError(filename, head.number, "expected 'lattice <n>'");
    int n = to_int(head.tokens[1], filename, head.number);
    if (n <= 0) throw ParseError(filename, head.number, "lattice size must be positive");
    BitMatrix leq(n, n);
    for (int i = 0; i < n; ++i) {
        const Line& row = cur.next();
        if (row.tokens.size() != 1)
            throw ParseError(filename, row.number, "expected one 0/1 row");
        leq.row(i) = parse_bit_row(row.tokens[0], n, filename, row.number);
    }
    if (!cur.done())
        throw ParseError(filename, cur.peek().number, "trailing content");
    try {
        return FinLattice::from_leq(std::move(leq));
    } catch (const Error& e) {
        throw ParseError(filename, head.number, e.what());
    }
}

std::string write_lattice(const FinLattice& s) {
    std::ostringstream out;
    out << "lattice " << s.size() << "\n";
    for (int i = 0; i < s.size(); ++i) {
        for (int j = 0; j < s.size(); ++j) out << (s.leq(i, j) ? '1' : '0');
        out << "\n";
    }
    return out.str();
}

JslMorphism parse_morphism(const std::string& text, const FileLoader& load,
                           const std::string& filename) {
    auto lines = tokenize(text);
    Cursor cur{lines, filename};
    const Line& head = cur.next();
    if (head.tokens[0] != "mor" || head.tokens.size() != 3)
        throw ParseError(filename, head.number, "expected 'mor <dom-file> <cod-file>'");
    FinLattice dom = parse_lattice(load(head.tokens[1]), head.tokens[1]);
    FinLattice cod = parse_lattice(load(head.tokens[2]), head.tokens[2]);
    std::vector<int> map;
    while (!cur.done()) {
        const Line& l = cur.next();
        for (const auto& tok : l.tokens)
            map.push_back(to_int(tok, filename, l.number));
    }
    if (static_cast<int>(map.size()) != dom.size())
        throw ParseError(filename, head.number, "expected one image per element");
    try {
        return JslMorphism::from_map(share(std::move(dom)), share(std::move(cod)),
                                     std::move(map));
    } catch (const Error& e) {
        throw ParseError(filename, head.number, e.what());
    }
}

std::string write_morphism(const JslMorphism& f, const std::string& dom_file,
                           const std::string& cod_file) {
    std::ostringstream out;
    out << "mor " << dom_file << " " << cod_file << "\n";
    for (int i = 0; i < f.dom().size(); ++i) {
        if (i) out << " ";
        out << f(i);
    }
    out << "\n";
    return out.str();
}

namespace {

Rel parse_rel_at(Cursor& cur) {
    const std::string& filename = cur.file;
    const Line& head = cur.next();
    if (head.tokens[0] != "rel" || head.tokens.size() != 3)
        throw ParseError(filename, head.number, "expected 'rel <rows> <cols>'");
    int rows = to_int(head.tokens[1], filename, head.number);
    int cols = to_int(head.tokens[2], filename, head.number);
    if (rows < 0 || cols < 0)
        throw ParseError(filename, head.number, "negative carrier size");
    Rel r(rows, cols);
    if (!cur.done() && cur.peek().tokens[0] == "rows") {
        const Line& l = cur.next();
        if (static_cast<int>(l.tokens.size()) != rows + 1)
            throw ParseError(filename, l.number, "expected one label per row");
        r.row_labels.assign(l.tokens.begin() + 1, l.tokens.end());
    }
    if (!cur.done() && cur.peek().tokens[0] == "cols") {
        const Line& l = cur.next();
        if (static_cast<int>(l.tokens.size()) != cols + 1)
            throw ParseError(filename, l.number, "expected one label per column");
        r.col_labels.assign(l.tokens.begin() + 1, l.tokens.end());
    }
    for (int i = 0; i < rows; ++i) {
        const Line& l = cur.next();
        if (l.tokens.size() != 1)
            throw ParseError(filename, l.number, "expected one 0/1 row");
        r.bits.row(i) = parse_bit_row(l.tokens[0], cols, filename, l.number);
    }
    return r;
}

}  // namespace

Rel parse_rel(const std::string& text, const std::string& filename) {
    auto lines = tokenize(text);
    Cursor cur{lines, filename};
    Rel r = parse_rel_at(cur);
    if (!cur.done())
        throw ParseError(filename, cur.peek().number, "trailing content");
    return r;
}

std::string write_rel(const Rel& r) {
    std::ostringstream out;
    out << "rel " << r.rows << " " << r.cols << "\n";
    if (!r.row_labels.empty()) {
        out << "rows";
        for (const auto& l : r.row_labels) out << " " << l;
        out << "\n";
    }
    if (!r.col_labels.empty()) {
        out << "cols";
        for (const auto& l : r.col_labels) out << " " << l;
        out << "\n";
    }
    for (int i = 0; i < r.rows; ++i) out << r.bits.row(i).to_string01() << "\n";
    return out.str();
}

MonoidRecognizer parse_monoid(const std::string& text,
                              const std::string& filename) {
    auto lines = tokenize(text);
    Cursor cur{lines, filename};
    const Line& head = cur.next();
    if (head.tokens[0] != "monoid" || head.tokens.size() != 2)
        throw ParseError(filename, head.number, "expected 'monoid <n>'");
    int n = to_int(head.tokens[1], filename, head.number);
    if (n <= 0) throw ParseError(filename, head.number, "monoid size must be positive");

    MonoidRecognizer m;
    m.size = n;
    m.table.resize(n * n);
    for (int i = 0; i < n; ++i) {
        const Line& l = cur.next();
        if (static_cast<int>(l.tokens.size()) != n)
            throw ParseError(filename, l.number, "expected a row of " +
                             std::to_string(n) + " products");
        for (int j = 0; j < n; ++j) {
            int v = to_int(l.tokens[j], filename, l.number);
            if (v < 0 || v >= n)
                throw ParseError(filename, l.number, "product out of range");
            m.table[i * n + j] = v;
        }
    }
    std::vector<std::string> symbols;
    m.finals = Bits(n);
    bool saw_final = false;
    while (!cur.done()) {
        const Line& l = cur.next();
        if (l.tokens[0] == "h") {
            if (l.tokens.size() != 3)
                throw ParseError(filename, l.number, "expected 'h <sym> <idx>'");
            symbols.push_back(l.tokens[1]);
            int v = to_int(l.tokens[2], filename, l.number);
            if (v < 0 || v >= n)
                throw ParseError(filename, l.number, "letter image out of range");
            m.letter_map.push_back(v);
        } else if (l.tokens[0] == "final") {
            saw_final = true;
            for (std::size_t i = 1; i < l.tokens.size(); ++i) {
                int v = to_int(l.tokens[i], filename, l.number);
                if (v < 0 || v >= n)
                    throw ParseError(filename, l.number, "final element out of range");
                m.finals.set(v);
            }
        } else {
            throw ParseError(filename, l.number, "expected 'h' or 'final'");
        }
    }
    if (symbols.empty())
        throw ParseError(filename, head.number, "monoid needs at least one letter");
    if (!saw_final)
        throw ParseError(filename, head.number, "missing 'final' line");
    try {
        m.alphabet = Alphabet(symbols);
    } catch (const Error& e) {
        throw ParseError(filename, head.number, e.what());
    }
    if (!m.is_associative_with_identity())
        throw ParseError(filename, head.number,
                         "table is not an associative monoid with identity 0");
    return m;
}

std::string write_monoid(const MonoidRecognizer& m) {
    std::ostringstream out;
    out << "monoid " << m.size << "\n";
    for (int i = 0; i < m.size; ++i) {
        for (int j = 0; j < m.size; ++j) {
            if (j) out << " ";
            out << m.mul(i, j);
        }
        out << "\n";
    }
    for (int a = 0; a < m.alphabet.size(); ++a)
        out << "h " << m.alphabet.symbols[a] << " " << m.letter_map[a] << "\n";
    out << "final";
    m.finals.for_each([&](int f) { out << " " << f; });
    out << "\n";
    return out.str();
}

BicliqueCover parse_cover(const std::string& text, int rows, int cols,
                          const std::string& filename) {
    BicliqueCover c;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        strip_comment(raw);
        if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto bar = raw.find('|');
        if (bar == std::string::npos)
            throw ParseError(filename, number, "expected 'rows: ... | cols: ...'");
        auto parse_side = [&](std::string side, const std::string& tag, int bound) {
            auto colon = side.find(':');
            std::istringstream ss(side);
            std::string word;
            ss >> word;
            if (colon == std::string::npos || word != tag + ":")
                throw ParseError(filename, number, "expected '" + tag + ":'");
            Bits b(bound);
            while (ss >> word) {
                int v = to_int(word, filename, number);
                if (v < 0 || v >= bound)
                    throw ParseError(filename, number, "index out of range");
                b.set(v);
            }
            return b;
        };
        Bits bx = parse_side(raw.substr(0, bar), "rows", rows);
        Bits by = parse_side(raw.substr(bar + 1), "cols", cols);
        c.bicliques.push_back({std::move(bx), std::move(by)});
    }
    return c;
}

std::string write_cover(const BicliqueCover& c) {
    std::ostringstream out;
    for (const auto& [bx, by] : c.bicliques) {
        out << "rows:";
        bx.for_each([&](int i) { out << " " << i; });
        out << " | cols:";
        by.for_each([&](int i) { out << " " << i; });
        out << "\n";
    }
    return out.str();
}

Certificate parse_certificate(const std::string& text,
                              const std::string& filename) {
    auto lines = tokenize(text);
    Cursor cur{lines, filename};
    Certificate c;
    const Line& head = cur.next();
    if (head.tokens.size() != 1 ||
        (head.tokens[0] != "atomic" && head.tokens[0] != "subatomic"))
        throw ParseError(filename, head.number, "expected 'atomic' or 'subatomic'");
    c.kind = head.tokens[0] == "atomic" ? CertKind::atomic : CertKind::subatomic;
    const Line& kl = cur.next();
    if (kl.tokens[0] != "k" || kl.tokens.size() != 2)
        throw ParseError(filename, kl.number, "expected 'k <int>'");
    c.k = to_int(kl.tokens[1], filename, kl.number);
    const Line& il = cur.next();
    if (il.tokens[0] != "instance" || il.tokens.size() != 2)
        throw ParseError(filename, il.number, "expected 'instance <hex digest>'");
    c.instance_digest = std::stoull(il.tokens[1], nullptr, 16);

    auto expect_section = [&](const std::string& tag) {
        const Line& l = cur.next();
        if (l.tokens.size() != 1 || l.tokens[0] != tag)
            throw ParseError(filename, l.number, "expected section '" + tag + "'");
    };
    expect_section("S");
    c.s = parse_rel_at(cur);
    expect_section("P");
    c.p = parse_rel_at(cur).bits;
    expect_section("Q");
    c.q = parse_rel_at(cur).bits;
    while (!cur.done()) {
        const Line& l = cur.next();
        if (l.tokens.size() != 2 || l.tokens[0] != "T")
            throw ParseError(filename, l.number, "expected 'T <sym>'");
        c.t.push_back(parse_rel_at(cur).bits);
    }
    return c;
}

std::string write_certificate(const Certificate& c, const Alphabet& alphabet) {
    std::ostringstream out;
    out << (c.kind == CertKind::atomic ? "atomic" : "subatomic") << "\n";
    out << "k " << c.k << "\n";
    out << "instance " << digest_hex(c.instance_digest) << "\n";
    out << "S\n" << write_rel(c.s);
    out << "P\n" << write_rel(Rel::from_bits(c.p));
    out << "Q\n" << write_rel(Rel::from_bits(c.q));
    for (std::size_t a = 0; a < c.t.size(); ++a) {
        out << "T " << alphabet.symbols[a] << "\n";
        out << write_rel(Rel::from_bits(c.t[a]));
    }
    return out.str();
}

std::uint64_t digest64(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(std::uint64_t d) {
    static const char* hex = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[i] = hex[d & 15];
        d >>= 4;
    }
    return s;
}

std::uint64_t instance_digest(const Dfa& a, const Dfa& b) {
    return digest64(write_dfa(a) + "--" + write_dfa(b));
}

std::uint64_t instance_digest(const MonoidRecognizer& m) {
    return digest64(write_monoid(m));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

}  // namespace atomnfa
