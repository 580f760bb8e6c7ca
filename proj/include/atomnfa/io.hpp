#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>

#include "atomnfa/biclique.hpp"
#include "atomnfa/certify.hpp"
#include "atomnfa/dep.hpp"
#include "atomnfa/langalg.hpp"
#include "atomnfa/semilattice.hpp"

namespace atomnfa {

/// All formats are UTF-8, LF line endings, '#' starts a comment.
/// Parse errors carry the originating file name and line.

using Automaton = std::variant<Dfa, Nfa>;

Automaton parse_automaton(const std::string& text,
                          const std::string& filename = "<input>");
std::string write_dfa(const Dfa& d);
std::string write_nfa(const Nfa& n);

FinLattice parse_lattice(const std::string& text,
                         const std::string& filename = "<input>");
std::string write_lattice(const FinLattice& s);

/// Morphism files reference their domain/codomain lattice files; the
/// loader maps a referenced name to file contents.
using FileLoader = std::function<std::string(const std::string&)>;
JslMorphism parse_morphism(const std::string& text, const FileLoader& load,
                           const std::string& filename = "<input>");
std::string write_morphism(const JslMorphism& f, const std::string& dom_file,
                           const std::string& cod_file);

Rel parse_rel(const std::string& text,
              const std::string& filename = "<input>");
std::string write_rel(const Rel& r);

MonoidRecognizer parse_monoid(const std::string& text,
                              const std::string& filename = "<input>");
std::string write_monoid(const MonoidRecognizer& m);

BicliqueCover parse_cover(const std::string& text, int rows, int cols,
                          const std::string& filename = "<input>");
std::string write_cover(const BicliqueCover& c);

Certificate parse_certificate(const std::string& text,
                              const std::string& filename = "<input>");
std::string write_certificate(const Certificate& c, const Alphabet& alphabet);

/// FNV-1a digest of a canonical serialization; pins the index order a
/// certificate refers to.
std::uint64_t digest64(const std::string& text);
std::string digest_hex(std::uint64_t d);

std::uint64_t instance_digest(const Dfa& a, const Dfa& b);
std::uint64_t instance_digest(const MonoidRecognizer& m);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace atomnfa
