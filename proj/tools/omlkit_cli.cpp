// omlkit — command-line front end for the orthomodular-lattice toolkit.
//
// Input files hold one Greechie diagram per line ('-' reads standard
// input); blank lines and lines starting with '#' are skipped.  Every
// subcommand prints one record per lattice, in input order, regardless of
// --jobs.  --format tsv replaces the prose with a tab-separated table
// (header row first).  Exit status: 0 success, 1 I/O / syntax / build
// errors, 2 when --fail-on-violation is set and some checked property
// failed (corpus verify always uses 2 for fact mismatches).

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "omlkit/checker.hpp"
#include "omlkit/corpus.hpp"
#include "omlkit/families.hpp"
#include "omlkit/godp.hpp"
#include "omlkit/greechie.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/mgegen.hpp"
#include "omlkit/states.hpp"
#include "omlkit/term.hpp"

namespace {

using namespace omlkit;

struct GlobalOpts {
    std::string format = "text";
    bool fail_on_violation = false;
    int jobs = 1;
};

/** Fatal input problem; message goes to stderr, process exits with `code`. */
struct Fatal {
    std::string msg;
    int code = 1;
};

std::vector<DiagramLine> load_lines(const std::string& path)
{
    if (path == "-") return read_diagram_lines(std::cin);
    std::ifstream in(path);
    if (!in) throw Fatal{path + ": cannot open"};
    return read_diagram_lines(in);
}

/** Loads and parses, treating any bad line as fatal (used by analyses). */
std::vector<DiagramLine> load_diagrams(const std::string& path)
{
    auto lines = load_lines(path);
    if (lines.empty()) throw Fatal{path + ": no diagrams found"};
    for (const auto& dl : lines)
        if (!dl.diagram) {
            std::string at = path + ":" + std::to_string(dl.line_no);
            if (dl.error_position != GreechieError::npos)
                at += ":" + std::to_string(dl.error_position + 1);
            throw Fatal{at + ": " + dl.error};
        }
    return lines;
}

struct Built {
    int line_no = 0;
    OmlLattice lattice;
};

std::vector<Built> build_all(const std::string& path)
{
    auto lines = load_diagrams(path);
    std::vector<Built> out;
    out.reserve(lines.size());
    for (auto& dl : lines) {
        try {
            out.push_back({dl.line_no, build_oml(*dl.diagram)});
        } catch (const OmlBuildError& e) {
            throw Fatal{path + ":" + std::to_string(dl.line_no) + ": " + e.what()};
        }
    }
    return out;
}

/** "line N: " when the input holds several lattices, empty otherwise. */
std::string prefix_for(const std::vector<Built>& ls, std::size_t i)
{
    if (ls.size() < 2) return "";
    return "line " + std::to_string(ls[i].line_no) + ": ";
}

void tsv_row(std::initializer_list<std::string> cells)
{
    bool first = true;
    for (const auto& c : cells) {
        if (!first) std::cout << '\t';
        std::cout << c;
        first = false;
    }
    std::cout << '\n';
}

std::string rat_str(const Rat& r)
{
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string block_atoms(const GreechieDiagram& d, std::size_t b)
{
    std::string s;
    for (int a : d.blocks[b]) s += d.labels[a];
    return s;
}

std::string assignment_str(const OmlLattice& l, const ConditionalEquation& eq,
                           const std::map<std::string, int>& cex)
{
    std::string s;
    for (const auto& v : eq.variables) {
        auto it = cex.find(v);
        if (it == cex.end()) continue;
        if (!s.empty()) s += ' ';
        s += v + "=" + l.element_name(it->second);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

int cmd_parse(const GlobalOpts& g, const std::string& path)
{
    auto lines = load_lines(path);
    bool tsv = g.format == "tsv";
    if (tsv) tsv_row({"line", "status", "atoms", "blocks", "detail"});
    bool any_bad = false;
    for (const auto& dl : lines) {
        if (dl.diagram) {
            const auto& d = *dl.diagram;
            if (tsv)
                tsv_row({std::to_string(dl.line_no), "ok", std::to_string(d.atom_count()),
                         std::to_string(d.block_count()), ""});
            else
                std::cout << "line " << dl.line_no << ": ok (" << d.atom_count()
                          << " atoms, " << d.block_count() << " blocks)\n";
        } else {
            any_bad = true;
            if (tsv)
                tsv_row({std::to_string(dl.line_no), "error", "", "", dl.error});
            else
                std::cout << "line " << dl.line_no << ": error: " << dl.error << "\n";
        }
    }
    return any_bad ? 1 : 0;
}

int cmd_info(const GlobalOpts& g, const std::string& path)
{
    auto ls = build_all(path);
    bool tsv = g.format == "tsv";
    if (tsv) tsv_row({"line", "elements", "atoms", "coatoms", "joins", "blocks"});
    for (std::size_t i = 0; i < ls.size(); ++i) {
        const OmlLattice& l = ls[i].lattice;
        int coatoms = 0, joins = 0;
        for (int e = 0; e < l.size(); ++e) {
            if (l.element(e).kind == OmlElement::Kind::Coatom) ++coatoms;
            if (l.element(e).kind == OmlElement::Kind::BlockJoin) ++joins;
        }
        if (tsv)
            tsv_row({std::to_string(ls[i].line_no), std::to_string(l.size()),
                     std::to_string(l.atom_count()), std::to_string(coatoms),
                     std::to_string(joins), std::to_string(l.source().block_count())});
        else
            std::cout << prefix_for(ls, i) << l.size() << " elements: " << l.atom_count()
                      << " atoms, " << coatoms << " coatoms, " << joins
                      << " block joins; " << l.source().block_count() << " blocks\n";
    }
    return 0;
}

int cmd_check(const GlobalOpts& g, const std::string& path, const std::string& eq_text,
              const std::string& family_spec)
{
    if (eq_text.empty() == family_spec.empty())
        throw Fatal{"check needs exactly one of --eq or --family"};

    ConditionalEquation eq;
    if (!eq_text.empty()) {
        eq = parse_equation(eq_text);
    } else {
        std::string name = family_spec;
        int n = 0;
        if (auto colon = family_spec.find(':'); colon != std::string::npos) {
            name = family_spec.substr(0, colon);
            try {
                n = std::stoi(family_spec.substr(colon + 1));
            } catch (const std::exception&) {
                throw Fatal{"bad family parameter in '" + family_spec + "'"};
            }
        }
        eq = build_family(name, n);
    }

    auto ls = build_all(path);
    bool tsv = g.format == "tsv";
    if (tsv) tsv_row({"line", "verdict", "counterexample", "tested"});
    bool violated = false;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        Verdict v = check_equation(ls[i].lattice, eq, {true, g.jobs});
        std::string cex =
            v.holds ? "" : assignment_str(ls[i].lattice, eq, *v.counterexample);
        if (!v.holds) violated = true;
        if (tsv)
            tsv_row({std::to_string(ls[i].line_no), v.holds ? "holds" : "fails", cex,
                     std::to_string(v.assignments_tested)});
        else if (v.holds)
            std::cout << prefix_for(ls, i) << "holds\n";
        else
            std::cout << prefix_for(ls, i) << "fails: " << cex << "\n";
    }
    return (violated && g.fail_on_violation) ? 2 : 0;
}

int cmd_states(const GlobalOpts& g, const std::string& path, const std::string& mode)
{
    auto ls = build_all(path);
    bool tsv = g.format == "tsv";
    bool violated = false;

    if (mode == "strong") {
        if (tsv) tsv_row({"line", "strong", "witness_a", "witness_b", "min"});
        for (std::size_t i = 0; i < ls.size(); ++i) {
            const OmlLattice& l = ls[i].lattice;
            StrongCheckResult r = strong_state_check(l, g.jobs);
            if (r.strong) {
                if (tsv)
                    tsv_row({std::to_string(ls[i].line_no), "yes", "", "", ""});
                else
                    std::cout << prefix_for(ls, i) << "strong (" << r.pairs_checked
                              << " pairs checked)\n";
                continue;
            }
            violated = true;
            std::string a = l.element_name(r.witness_a);
            std::string b = l.element_name(r.witness_b);
            std::string min = r.infeasible ? "" : rat_str(r.min_value);
            if (tsv) {
                tsv_row({std::to_string(ls[i].line_no), "no", a, b, min});
            } else if (r.infeasible) {
                std::cout << prefix_for(ls, i) << "not strong; witness " << a << ", " << b
                          << "; no state with m(" << a << ")=1\n";
            } else {
                std::cout << prefix_for(ls, i) << "not strong; witness " << a << ", " << b
                          << "; min " << min << "\n";
            }
        }
    } else if (mode == "any") {
        if (tsv) tsv_row({"line", "admits"});
        for (std::size_t i = 0; i < ls.size(); ++i) {
            bool yes = admits_state(ls[i].lattice).has_value();
            if (!yes) violated = true;
            if (tsv)
                tsv_row({std::to_string(ls[i].line_no), yes ? "yes" : "no"});
            else
                std::cout << prefix_for(ls, i) << (yes ? "admits states" : "no states")
                          << "\n";
        }
    } else if (mode == "unique") {
        if (tsv) tsv_row({"line", "status", "state"});
        for (std::size_t i = 0; i < ls.size(); ++i) {
            const OmlLattice& l = ls[i].lattice;
            UniqueVerdict v = unique_state(l);
            const auto& labels = l.source().labels;
            std::string desc;
            if (v.status == UniqueStatus::Unique) {
                for (int a = 0; a < l.atom_count(); ++a) {
                    if (a) desc += ' ';
                    desc += std::string(1, labels[a]) + "=" +
                            rat_str(v.state->atom_values[a]);
                }
            } else if (v.status == UniqueStatus::Many) {
                for (int a = 0; a < l.atom_count(); ++a)
                    if (v.distinct->first.atom_values[a] !=
                        v.distinct->second.atom_values[a]) {
                        desc = std::string("m(") + labels[a] + ")=" +
                               rat_str(v.distinct->first.atom_values[a]) + " or " +
                               rat_str(v.distinct->second.atom_values[a]);
                        break;
                    }
            }
            if (v.status != UniqueStatus::Unique) violated = true;
            const char* status = v.status == UniqueStatus::NoState ? "no states"
                                 : v.status == UniqueStatus::Unique ? "unique state"
                                                                    : "many states";
            if (tsv)
                tsv_row({std::to_string(ls[i].line_no),
                         v.status == UniqueStatus::NoState ? "none"
                         : v.status == UniqueStatus::Unique ? "unique"
                                                            : "many",
                         desc});
            else if (desc.empty())
                std::cout << prefix_for(ls, i) << status << "\n";
            else
                std::cout << prefix_for(ls, i) << status << "; " << desc << "\n";
        }
    } else {
        throw Fatal{"unknown states mode '" + mode + "' (strong|any|unique)"};
    }
    return (violated && g.fail_on_violation) ? 2 : 0;
}

int cmd_goscan(const GlobalOpts& g, const std::string& path, int max_n)
{
    auto built = build_all(path);
    std::vector<OmlLattice> ls;
    ls.reserve(built.size());
    for (auto& b : built) ls.push_back(std::move(b.lattice));
    auto results = go_batch(ls, max_n, g.jobs);

    bool tsv = g.format == "tsv";
    if (tsv) tsv_row({"line", "outcome", "n", "passes"});
    bool violated = false;
    for (std::size_t i = 0; i < built.size(); ++i) {
        const GoScanResult& r = results[i];
        std::string pre;
        if (built.size() >= 2) pre = "line " + std::to_string(built[i].line_no) + ": ";
        switch (r.outcome) {
            case GoScanResult::Outcome::FirstFail:
                violated = true;
                if (tsv)
                    tsv_row({std::to_string(built[i].line_no), "first-fail",
                             std::to_string(r.n), std::to_string(r.passes)});
                else
                    std::cout << pre << "first-fail n=" << r.n << "\n";
                break;
            case GoScanResult::Outcome::ConvergedAllPass:
                if (tsv)
                    tsv_row({std::to_string(built[i].line_no), "converged", "",
                             std::to_string(r.passes)});
                else
                    std::cout << pre << "converged at pass " << r.converged_pass
                              << "; all n-Go hold\n";
                break;
            case GoScanResult::Outcome::CutoffReached:
                if (tsv)
                    tsv_row({std::to_string(built[i].line_no), "cutoff", "",
                             std::to_string(r.passes)});
                else
                    std::cout << pre << "no failure up to n=" << r.max_n << " (cutoff)\n";
                break;
        }
    }
    return (violated && g.fail_on_violation) ? 2 : 0;
}

int cmd_genmge(const GlobalOpts& g, const std::string& path)
{
    auto ls = build_all(path);
    bool tsv = g.format == "tsv";
    if (tsv)
        tsv_row({"line", "witness_a", "witness_b", "relaxed", "condensed", "renamed",
                 "mge"});
    int rc = 0;
    for (std::size_t i = 0; i < ls.size(); ++i) {
        const OmlLattice& l = ls[i].lattice;
        std::string pre = prefix_for(ls, i);
        try {
            StrongCheckResult s = strong_state_check(l, g.jobs);
            if (s.strong)
                throw MgeGenError(MgeGenErrc::WitnessNotTight,
                                  "lattice has a strong set of states; nothing to relax");
            RelaxationRecord rec = relax_blocks(l, s.witness_a, s.witness_b);
            CondensedStateEquation c = build_condensed(l, rec);
            CondensedStateEquation renamed = rename_condensed(c);
            MgEquation mge = balance_and_emit(l, c, g.jobs);

            const GreechieDiagram& d = l.source();
            std::string relaxed;
            int relaxed_count = 0;
            for (std::size_t b = 0; b < rec.relaxed.size(); ++b)
                if (rec.relaxed[b]) {
                    if (!relaxed.empty()) relaxed += tsv ? "," : " ";
                    relaxed += block_atoms(d, b);
                    ++relaxed_count;
                }
            if (tsv) {
                tsv_row({std::to_string(ls[i].line_no), l.element_name(rec.witness_a),
                         l.element_name(rec.witness_b), relaxed, c.str(), renamed.str(),
                         mge.equation.str()});
            } else {
                std::cout << pre << "witness " << l.element_name(rec.witness_a) << ", "
                          << l.element_name(rec.witness_b) << "\n";
                std::cout << pre << "relaxed " << relaxed_count << "/"
                          << d.block_count() << " blocks: " << relaxed << "\n";
                std::cout << pre << "condensed: " << c.str() << "\n";
                std::cout << pre << "renamed: " << renamed.str() << "\n";
                std::cout << pre << "mge: " << mge.equation.str() << "\n";
            }
        } catch (const MgeGenError& e) {
            std::cerr << "omlkit: " << path << ":" << std::to_string(ls[i].line_no)
                      << ": cannot generate: " << e.what() << "\n";
            rc = 1;
        }
    }
    return rc;
}

int cmd_corpus(const GlobalOpts& g, const std::string& action, const std::string& name)
{
    bool tsv = g.format == "tsv";
    if (action == "list") {
        if (tsv) tsv_row({"name", "notation", "note"});
        for (const auto& e : corpus()) {
            if (tsv)
                tsv_row({e.name, e.notation, e.note});
            else
                std::cout << e.name << ": " << e.note << "\n";
        }
        return 0;
    }
    if (action == "show") {
        if (name.empty()) throw Fatal{"corpus show needs a lattice name"};
        const CorpusEntry& e = corpus_get(name);
        // '#' comment first so the output can be piped back into any subcommand.
        std::cout << "# " << e.name << ": " << e.note << "\n" << e.notation << "\n";
        return 0;
    }
    if (action == "verify") {
        int rc = 0;
        for (const auto& e : corpus()) {
            if (!name.empty() && e.name != name) continue;
            OmlLattice l = build_oml(e.diagram());
            std::vector<std::string> bad;

            GoScanResult r = go_scan(l, 100);
            if (e.go_first_fail) {
                if (r.outcome != GoScanResult::Outcome::FirstFail || r.n != *e.go_first_fail)
                    bad.push_back("expected first-fail n=" + std::to_string(*e.go_first_fail));
            } else if (r.outcome != GoScanResult::Outcome::ConvergedAllPass) {
                bad.push_back("expected all n-Go to hold");
            }

            if (e.e3_holds &&
                check_equation(l, build_family(Family::En, 3), {true, g.jobs}).holds !=
                    *e.e3_holds)
                bad.push_back(std::string("expected E3 to ") +
                              (*e.e3_holds ? "hold" : "fail"));
            if (e.e4_holds &&
                check_equation(l, build_family(Family::En, 4), {true, g.jobs}).holds !=
                    *e.e4_holds)
                bad.push_back(std::string("expected E4 to ") +
                              (*e.e4_holds ? "hold" : "fail"));

            if (e.state_fact == CorpusEntry::StateFact::NoState) {
                if (admits_state(l)) bad.push_back("expected no states");
            } else if (e.state_fact == CorpusEntry::StateFact::NotStrong) {
                if (!admits_state(l)) bad.push_back("expected states to exist");
                if (strong_state_check(l, g.jobs).strong)
                    bad.push_back("expected a non-strong state space");
            }

            if (bad.empty()) {
                std::cout << e.name << ": ok\n";
            } else {
                rc = 2;
                for (const auto& m : bad) std::cout << e.name << ": MISMATCH: " << m << "\n";
            }
        }
        if (!name.empty()) corpus_get(name);   // unknown name still errors
        return rc;
    }
    throw Fatal{"unknown corpus action '" + action + "' (list|show|verify)"};
}

}   // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite orthomodular lattice toolkit: Greechie diagram parsing, "
                 "equation checking, state-space analysis, and equation generation"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"text", "tsv"}))
        ->capture_default_str();
    app.add_flag("--fail-on-violation", g.fail_on_violation,
                 "exit 2 when any checked property fails");
    app.add_option("--jobs", g.jobs, "worker threads (output order is unaffected)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();

    std::string file, eq_text, family_spec, mode = "strong";
    std::string corpus_action, corpus_name;
    int max_n = 100;

    auto add_file = [&](CLI::App* sub) {
        sub->add_option("file", file, "diagram file, or - for stdin")->required();
        sub->fallthrough();
    };

    auto* c_parse = app.add_subcommand("parse", "Validate diagram notation line by line");
    add_file(c_parse);

    auto* c_info = app.add_subcommand("info", "Element and block counts per lattice");
    add_file(c_info);

    auto* c_check = app.add_subcommand("check", "Check an equation on each lattice");
    c_check->add_option("--eq", eq_text, "equation text, e.g. \"a # b |- a <= b'\"");
    c_check->add_option("--family", family_spec,
                        "named family, e.g. go_2n:3, noa:4, en:3, estar2c");
    add_file(c_check);

    auto* c_states = app.add_subcommand("states", "State-space analysis per lattice");
    c_states->add_option("--mode", mode, "strong|any|unique")->capture_default_str();
    add_file(c_states);

    auto* c_goscan = app.add_subcommand("goscan", "Scan the n-Go equations by value-set "
                                                  "propagation");
    c_goscan->add_option("--max-n", max_n, "largest n to test")->capture_default_str();
    add_file(c_goscan);

    auto* c_genmge = app.add_subcommand("genmge", "Derive an equation from a non-strong "
                                                  "state space");
    add_file(c_genmge);

    auto* c_corpus = app.add_subcommand("corpus", "Embedded benchmark lattices");
    c_corpus->add_option("action", corpus_action, "list|show|verify")->required();
    c_corpus->add_option("name", corpus_name, "lattice name (show; optional for verify)");
    c_corpus->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : 1;
    }

    try {
        if (c_parse->parsed()) return cmd_parse(g, file);
        if (c_info->parsed()) return cmd_info(g, file);
        if (c_check->parsed()) return cmd_check(g, file, eq_text, family_spec);
        if (c_states->parsed()) return cmd_states(g, file, mode);
        if (c_goscan->parsed()) return cmd_goscan(g, file, max_n);
        if (c_genmge->parsed()) return cmd_genmge(g, file);
        if (c_corpus->parsed()) return cmd_corpus(g, corpus_action, corpus_name);
    } catch (const Fatal& f) {
        std::cerr << "omlkit: " << f.msg << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "omlkit: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
