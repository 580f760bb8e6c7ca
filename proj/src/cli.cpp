#include "atomnfa/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "atomnfa/errors.hpp"
#include "atomnfa/io.hpp"
#include "atomnfa/speclang.hpp"

namespace atomnfa {

namespace {

namespace fs = std::filesystem;

Dfa load_dfa(const std::string& path) {
    Automaton a = parse_automaton(read_file(path), path);
    if (auto* d = std::get_if<Dfa>(&a)) return *d;
    throw Error(path + ": expected a dfa");
}

Nfa load_nfa(const std::string& path) {
    Automaton a = parse_automaton(read_file(path), path);
    if (auto* n = std::get_if<Nfa>(&a)) return *n;
    return to_nfa(std::get<Dfa>(a));
}

struct Options {
    std::vector<std::string> inputs;
    int kmax = -1;
    std::uint64_t budget = 0;  // 0 = per-verb default
    std::uint64_t seed = 0;
    std::string out_path;
};

int cmd_analyze(const Options& opt, std::ostream& out) {
    Dfa a = load_dfa(opt.inputs[0]);
    Dfa b = load_dfa(opt.inputs[1]);
    DerivativeSystem ds = derivative_system(a, b);
    MonoidRecognizer syn = syntactic_monoid(ds.lang_dfa);
    LowerPath lp = lower_path(ds);

    out << "dfa_states: " << ds.lang_dfa.state_count << "\n";
    out << "rev_dfa_states: " << ds.rev_dfa.state_count << "\n";
    out << "syn_size: " << syn.size << "\n";
    auto dim = exact_dim(lp.dr, -1,
                         opt.budget ? opt.budget : kDefaultDimBudget);
    out << "dim: " << dim->dim << "\n";
    out << "nuclear: " << (is_nuclear(ds) ? "true" : "false") << "\n";
    out << "unary: " << (is_unary(ds.lang_dfa) ? "true" : "false") << "\n";
    out << "bideterministic: "
        << (is_bideterministic(ds.lang_dfa) ? "true" : "false") << "\n";
    out << "group: " << (is_group_language(syn) ? "true" : "false") << "\n";

    std::uint64_t family_budget = opt.budget ? opt.budget : kDefaultFamilyBudget;
    int kmax = opt.kmax >= 0 ? opt.kmax : ds.lang_dfa.state_count;
    int na_value = -1;
    try {
        auto na = na_oracle(ds.lang_dfa, ds.rev_dfa, kmax, family_budget);
        if (na) {
            na_value = na->value;
            out << "na: " << na->value << "\n";
        } else {
            out << "na: none\n";
        }
    } catch (const BudgetExceeded&) {
        out << "na: budget_exceeded\n";
    }
    try {
        auto nmu = nmu_oracle(syn, na_value >= 0 ? na_value : kmax, family_budget);
        if (nmu) out << "nmu: " << nmu->value << "\n";
        else out << "nmu: none\n";
    } catch (const BudgetExceeded&) {
        out << "nmu: budget_exceeded\n";
    }
    return 0;
}

int cmd_dim(const Options& opt, std::ostream& out) {
    Rel r = parse_rel(read_file(opt.inputs[0]), opt.inputs[0]);
    int kmax = opt.kmax;
    if (opt.inputs.size() > 1) kmax = std::stoi(opt.inputs[1]);
    auto res = exact_dim(r, kmax, opt.budget ? opt.budget : kDefaultDimBudget);
    if (!res) {
        out << "dim: none\n";
        return 1;
    }
    out << "dim: " << res->dim << "\n";
    out << write_cover(res->cover);
    return 0;
}

int cmd_certify_verify(const Options& opt, std::ostream& out) {
    const auto& in = opt.inputs;
    Certificate cert = parse_certificate(read_file(in.back()), in.back());
    bool ok = false;
    if (cert.kind == CertKind::atomic) {
        if (in.size() != 3)
            throw Error("atomic verification expects <A> <B> <cert>");
        Dfa a = load_dfa(in[0]);
        Dfa b = load_dfa(in[1]);
        if (cert.instance_digest != instance_digest(a, b))
            throw Error("certificate was issued for a different instance");
        ok = verify_atomic_certificate(a, b, cert, cert.k);
    } else {
        if (in.size() != 2)
            throw Error("subatomic verification expects <monoid> <cert>");
        MonoidRecognizer m = parse_monoid(read_file(in[0]), in[0]);
        if (cert.instance_digest != instance_digest(m))
            throw Error("certificate was issued for a different instance");
        ok = verify_subatomic_certificate(m, cert, cert.k);
    }
    out << "verified: " << (ok ? "true" : "false") << "\n";
    return ok ? 0 : 1;
}

int cmd_certify_build(const Options& opt, std::ostream& out) {
    const auto& in = opt.inputs;
    Certificate cert;
    Alphabet alpha;
    if (in.size() == 3) {
        Nfa n = load_nfa(in[0]);
        Dfa a = load_dfa(in[1]);
        Dfa b = load_dfa(in[2]);
        cert = extract_certificate(n, a, b);
        cert.instance_digest = instance_digest(a, b);
        alpha = a.alphabet;
    } else if (in.size() == 2) {
        Nfa n = load_nfa(in[0]);
        MonoidRecognizer m = parse_monoid(read_file(in[1]), in[1]);
        cert = extract_subatomic_certificate(n, m);
        cert.instance_digest = instance_digest(m);
        alpha = m.alphabet;
    } else {
        throw Error("certify build expects <nfa> <A> <B> or <nfa> <monoid>");
    }
    std::string path = opt.out_path.empty() ? "certificate.cert" : opt.out_path;
    write_file(path, write_certificate(cert, alpha));
    out << "k: " << cert.k << "\n";
    out << "written: " << path << "\n";
    return 0;
}

int cmd_reduce(const Options& opt, std::ostream& out) {
    Rel r = parse_rel(read_file(opt.inputs[0]), opt.inputs[0]);
    int k = std::stoi(opt.inputs[1]);
    ReductionInstance inst = lattice_language_instance(r, k);

    fs::path dir = opt.out_path.empty() ? fs::path(".") : fs::path(opt.out_path);
    fs::create_directories(dir);
    std::string stem = fs::path(opt.inputs[0]).stem().string();
    if (stem.empty()) stem = "instance";

    struct Out { std::string key, name, text; };
    std::vector<Out> files{
        {"source", stem + ".rel", write_rel(r)},
        {"dfa_l", stem + "_l.dfa", write_dfa(inst.dfa_l)},
        {"dfa_rl", stem + "_rl.dfa", write_dfa(inst.dfa_rl)},
        {"monoid", stem + ".monoid", write_monoid(inst.monoid)},
    };
    std::ostringstream manifest;
    manifest << "k " << k << "\n";
    for (const Out& f : files) {
        write_file((dir / f.name).string(), f.text);
        manifest << f.key << " " << f.name << " "
                 << digest_hex(digest64(f.text)) << "\n";
    }
    write_file((dir / (stem + ".manifest")).string(), manifest.str());
    out << "alphabet_size: " << inst.dfa_l.alphabet.size() << "\n";
    out << "dfa_l_states: " << inst.dfa_l.state_count << "\n";
    out << "dfa_rl_states: " << inst.dfa_rl.state_count << "\n";
    out << "monoid_size: " << inst.monoid.size << "\n";
    out << "manifest: " << (dir / (stem + ".manifest")).string() << "\n";
    return 0;
}

int cmd_oracle(const Options& opt, const std::string& kind, std::ostream& out) {
    Dfa a = load_dfa(opt.inputs[0]);
    Dfa b = load_dfa(opt.inputs[1]);
    DerivativeSystem ds = derivative_system(a, b);
    int kmax = opt.kmax >= 0 ? opt.kmax : ds.lang_dfa.state_count;
    std::optional<int> value;
    if (kind == "ns") {
        value = ns_bruteforce(ds.lang_dfa, kmax,
                              opt.budget ? opt.budget : kDefaultNsBudget);
    } else if (kind == "na") {
        auto res = na_oracle(ds.lang_dfa, ds.rev_dfa, kmax,
                             opt.budget ? opt.budget : kDefaultFamilyBudget);
        if (res) value = res->value;
    } else {
        MonoidRecognizer syn = syntactic_monoid(ds.lang_dfa);
        auto res = nmu_oracle(syn, kmax,
                              opt.budget ? opt.budget : kDefaultFamilyBudget);
        if (res) value = res->value;
    }
    if (!value) {
        out << kind << ": none\n";
        return 1;
    }
    out << kind << ": " << *value << "\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"algebraic toolkit for small atomic and subatomic acceptors"};
    app.require_subcommand(1);

    Options opt;
    std::string kind = "ns";

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--kmax", opt.kmax, "search bound");
        cmd->add_option("--budget", opt.budget, "enumeration/materialization budget");
        cmd->add_option("--seed", opt.seed, "seed for randomized sweeps");
        cmd->add_option("--out", opt.out_path, "output file or directory");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "report the invariants of a dfa pair");
    analyze->add_option("inputs", opt.inputs)->expected(2);
    add_common(analyze);

    CLI::App* dim = app.add_subcommand("dim", "bipartite dimension of a relation");
    dim->add_option("inputs", opt.inputs)->expected(1, 2);
    add_common(dim);

    CLI::App* certify = app.add_subcommand("certify", "verify or build certificates");
    certify->require_subcommand(1);
    CLI::App* cverify = certify->add_subcommand("verify", "check a certificate");
    cverify->add_option("inputs", opt.inputs)->expected(2, 3);
    add_common(cverify);
    CLI::App* cbuild = certify->add_subcommand("build", "extract a certificate from an nfa");
    cbuild->add_option("inputs", opt.inputs)->expected(2, 3);
    add_common(cbuild);

    CLI::App* reduce = app.add_subcommand("reduce", "emit the reduction bundle of a relation");
    reduce->add_option("inputs", opt.inputs)->expected(2);
    add_common(reduce);

    CLI::App* oracle = app.add_subcommand("oracle", "brute-force acceptor-size oracles");
    oracle->add_option("inputs", opt.inputs)->expected(2);
    oracle->add_option("--kind", kind, "ns, na or nmu")
        ->check(CLI::IsMember({"ns", "na", "nmu"}));
    add_common(oracle);

    std::vector<const char*> argv{"atomnfa"};
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (analyze->parsed()) return cmd_analyze(opt, out);
        if (dim->parsed()) return cmd_dim(opt, out);
        if (certify->parsed()) {
            if (cverify->parsed()) return cmd_certify_verify(opt, out);
            return cmd_certify_build(opt, out);
        }
        if (reduce->parsed()) return cmd_reduce(opt, out);
        if (oracle->parsed()) return cmd_oracle(opt, kind, out);
        err << "no command\n";
        return 2;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what();
        if (e.lower) err << " (lower bound " << *e.lower << ")";
        if (e.upper) err << " (upper bound " << *e.upper << ")";
        err << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace atomnfa
