#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "mmp/chain.hpp"
#include "mmp/driver.hpp"
#include "mmp/flip.hpp"
#include "mmp/homology.hpp"
#include "mmp/t0.hpp"
#include "mmp/tree.hpp"

namespace {

using namespace mmp;

Weights weights_of(const std::string& text) {
    // accept either a bare chain "6-2-2" or a single bracket "[6,2,2]"
    DecoratedChain ch = parse_chain(text);
    return flatten(ch);
}

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) fail(Errc::ParseError, "cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run(int argc, char** argv) {
    CLI::App app{"Minimal-model-program moves for quotient surface singularities"};
    app.require_subcommand(1);

    std::string chain_arg, chain_arg2, site_arg, fraction_arg, direction = "down";
    std::string bounds_arg, input_path;
    bool as_json = false, show_classes = false;
    int maxlen = 1;

    auto* c_fraction = app.add_subcommand("fraction", "Singularity fraction of a chain");
    c_fraction->add_option("chain", chain_arg)->required();

    auto* c_resolve = app.add_subcommand("resolve", "Minimal resolution chain of n/q");
    c_resolve->add_option("fraction", fraction_arg)->required();

    auto* c_t0 = app.add_subcommand("t0", "Class-T0 queries");
    auto* c_t0_check = c_t0->add_subcommand("check", "Recognize a class-T0 chain");
    c_t0_check->add_option("chain", chain_arg)->required();
    auto* c_t0_gen = c_t0->add_subcommand("generate", "All class-T0 chains up to a length");
    c_t0_gen->add_option("maxlen", maxlen)->required()->check(CLI::PositiveNumber);
    auto* c_t0_init = c_t0->add_subcommand("initial", "Initial curve index of a class-T0 chain");
    c_t0_init->add_option("chain", chain_arg)->required();

    auto* c_validate = app.add_subcommand("validate", "Check the M-resolution laws");
    c_validate->add_option("chain", chain_arg)->required();

    auto* c_flip = app.add_subcommand("flip", "Apply a symplectic flip");
    c_flip->add_option("chain", chain_arg)->required();
    c_flip->add_option("--site", site_arg, "p:case:orient, e.g. 1:B:L")->required();

    auto* c_antiflip = app.add_subcommand("antiflip", "Apply a symplectic antiflip");
    c_antiflip->add_option("chain", chain_arg)->required();
    c_antiflip->add_option("--site", site_arg, "p:case:orient")->required();

    auto* c_trace = app.add_subcommand("trace", "Move sequence for an M-resolution");
    c_trace->add_option("chain", chain_arg)->required();
    c_trace->add_flag("--json", as_json);
    c_trace->add_option("--direction", direction)->check(CLI::IsMember({"up", "down"}));

    auto* c_replay = app.add_subcommand("replay", "Replay a trace JSON file ('-' for stdin)");
    c_replay->add_option("file", input_path)->required();

    auto* c_toi = app.add_subcommand("toi", "Tree trace for a decorated tree JSON file");
    c_toi->add_option("file", input_path)->required();

    auto* c_certify = app.add_subcommand("certify", "Certify a flip pair homologically");
    c_certify->add_option("chainY", chain_arg)->required();
    c_certify->add_option("chainYplus", chain_arg2)->required();
    c_certify->add_flag("--show-classes", show_classes);

    auto* c_zero = app.add_subcommand("zero", "Zero-string utilities");
    auto* c_zero_enum = c_zero->add_subcommand("enum", "Enumerate zero strings within bounds");
    c_zero_enum->add_option("--bounds", bounds_arg, "a1,a2,...")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    if (c_fraction->parsed()) {
        std::cout << chain_fraction(parse_chain(chain_arg)).str() << "\n";
    } else if (c_resolve->parsed()) {
        Weights w = chain_from_fraction(parse_fraction(fraction_arg));
        std::vector<Segment> segs;
        for (int x : w) segs.push_back(Segment::plain(x));
        std::cout << format_chain(DecoratedChain(std::move(segs))) << "\n";
    } else if (c_t0_check->parsed() || c_t0_init->parsed()) {
        auto cert = t0_recognize(weights_of(chain_arg));
        if (!cert) {
            std::cout << "not T0\n";
            return 1;
        }
        if (c_t0_init->parsed())
            std::cout << cert->initial_index << "\n";
        else
            std::cout << "T0 n=" << cert->n << " a=" << cert->a << " initial=" << cert->initial_index
                      << "\n";
    } else if (c_t0_gen->parsed()) {
        for (const Weights& w : t0_generate(static_cast<std::size_t>(maxlen)))
            std::cout << format_chain(DecoratedChain({Segment::bracket(w)})) << "\n";
    } else if (c_validate->parsed()) {
        auto rep = validate_m_resolution(parse_chain(chain_arg));
        if (rep.valid) {
            std::cout << "valid\n";
        } else {
            for (const auto& issue : rep.issues)
                std::cout << "invalid rule=" << issue.rule << ": " << issue.detail << "\n";
            return 1;
        }
    } else if (c_flip->parsed()) {
        std::cout << format_chain(flip(parse_chain(chain_arg), FlipSite::parse(site_arg))) << "\n";
    } else if (c_antiflip->parsed()) {
        std::cout << format_chain(antiflip(parse_chain(chain_arg), FlipSite::parse(site_arg)))
                  << "\n";
    } else if (c_trace->parsed()) {
        MoveTrace t = direction == "down" ? from_minimal(parse_chain(chain_arg))
                                          : to_minimal(parse_chain(chain_arg));
        if (as_json)
            std::cout << trace_to_json(t) << "\n";
        else
            std::cout << render_trace(t, direction == "down");
    } else if (c_replay->parsed()) {
        MoveTrace t = trace_from_json(read_input(input_path));
        DecoratedChain end = replay(t.start, t.moves);
        if (!(end == t.end)) fail(Errc::MoveNotApplicable, "trace end does not match its moves");
        std::cout << format_chain(end) << "\n";
    } else if (c_toi->parsed()) {
        std::cout << tree_trace_to_json(toi_trace(tree_from_json(read_input(input_path)))) << "\n";
    } else if (c_certify->parsed()) {
        auto cert = certify_flip_pair(parse_chain(chain_arg), parse_chain(chain_arg2));
        std::cout << (cert.equal ? "true" : "false") << "\n";
        if (show_classes) {
            std::cout << "# blow-down of the site bracket\n" << embedding_csv(cert.y_side);
            std::cout << "# blow-down of the image bracket\n" << embedding_csv(cert.yplus_side);
        }
    } else if (c_zero_enum->parsed()) {
        std::vector<int> bounds;
        std::stringstream ss(bounds_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) bounds.push_back(std::stoi(tok));
        for (const auto& k : enumerate_zero_strings(bounds)) {
            for (std::size_t i = 0; i < k.size(); ++i) std::cout << (i ? "," : "") << k[i];
            std::cout << "\n";
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mmp::Error& e) {
        std::cerr << nlohmann::json{{"error", errc_name(e.code())}, {"message", e.what()}}.dump()
                  << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
        return 1;
    }
}
