#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rlim/bench.hpp"
#include "rlim/bigint.hpp"
#include "rlim/bitword.hpp"
#include "rlim/channel.hpp"
#include "rlim/codec.hpp"
#include "rlim/config.hpp"
#include "rlim/enumeration.hpp"

namespace {

using namespace rlim;

Count parse_message(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("message index is empty");
    for (char c : text)
        if (c < '0' || c > '9')
            throw std::invalid_argument("message index '" + text + "' is not a decimal integer");
    // Strip leading zeros: the string constructor would read them as octal.
    const std::size_t first_nz = text.find_first_not_of('0');
    return Count(first_nz == std::string::npos ? "0" : text.substr(first_nz));
}

// Reads an ASCII bit stream, ignoring whitespace.
std::vector<std::uint8_t> read_bit_stream(const std::string& text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c == '0' || c == '1')
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (c != ' ' && c != '\n' && c != '\r' && c != '\t')
            throw std::invalid_argument(std::string("stray character '") + c + "' in bit stream");
    }
    if (bits.empty()) throw std::invalid_argument("bit stream is empty");
    return bits;
}

// Routes a report to stdout or to --out.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << text;
}

struct CodeArgs {
    unsigned order = 1;
    unsigned info_bits = 1;
    std::string mode_text = "E";

    CodeParams resolve() const {
        return CodeParams::resolve(order, info_bits, mode_from_string(mode_text));
    }
};

void add_code_options(CLI::App& cmd, CodeArgs& args) {
    cmd.add_option("--i", args.order, "run-length order i")->required()->check(CLI::Range(1u, 64u));
    cmd.add_option("--k", args.info_bits, "info bits per block")
        ->required()
        ->check(CLI::Range(1u, 256u));
    cmd.add_option("--mode", args.mode_text, "codebook mode: E or N")->default_val("E");
}

int run_tables(const CodeArgs& code, const std::string& save_path) {
    const CodeParams params = code.resolve();
    const CountingTables tables = CountingTables::build(params.order_i, params.internal_T);
    std::ostringstream out;
    out << "i = " << params.order_i << '\n';
    out << "k = " << params.info_bits_k << '\n';
    out << "mode = " << mode_char(params.mode) << '\n';
    out << "n = " << params.length_n << '\n';
    out << "T = " << params.internal_T << '\n';
    out << "w_max = " << tables.max_weight() << '\n';
    out << "N =";
    for (unsigned w = 0; w <= tables.max_weight(); ++w) out << ' ' << tables.layer_size(w).str();
    out << '\n' << "Gamma =";
    for (unsigned w = 0; w <= tables.max_weight() + 1; ++w)
        out << ' ' << tables.layer_offset(w).str();
    out << '\n';
    out << "family_size = " << tables.family_total().str() << '\n';
    out << "table_bits = " << tables.stored_bit_count() << '\n';
    std::cout << out.str();
    if (!save_path.empty()) {
        std::ofstream file(save_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open table file '" + save_path + "'");
        tables.save(file);
    }
    return 0;
}

int run_encode(const CodeArgs& code, const std::string& message_text) {
    const RlimCodec codec = RlimCodec::create(code.resolve());
    std::cout << codec.encode(parse_message(message_text)).str() << '\n';
    return 0;
}

int run_rank(const CodeArgs& code, const std::string& word_text) {
    const RlimCodec codec = RlimCodec::create(code.resolve());
    const Count rank = codec.rank_word(BitWord::from_string(word_text));
    std::cout << "rank = " << rank.str() << '\n';
    std::cout << "in_code = " << (codec.rank_in_code(rank) ? "yes" : "no") << '\n';
    return 0;
}

int run_correct(unsigned order, const std::string& word_text) {
    std::cout << correct_received(BitWord::from_string(word_text), order).str() << '\n';
    return 0;
}

int run_decode(const CodeArgs& code, const std::string& word_text) {
    const RlimCodec codec = RlimCodec::create(code.resolve());
    const BitWord corrected = codec.correct(BitWord::from_string(word_text));
    std::cout << "corrected = " << corrected.str() << '\n';
    const ProjectionResult result = codec.project_decode_trace(corrected);
    for (std::size_t s = 0; s < result.steps.size(); ++s) {
        const ProjectionStep& step = result.steps[s];
        std::cout << "step " << s + 1 << ": word = " << step.word.str()
                  << ", rank = " << step.rank.str()
                  << ", in_code = " << (step.in_range ? "yes" : "no") << '\n';
    }
    std::cout << "message = " << result.message.str() << '\n';
    return 0;
}

int run_simulate(const std::string& config_path, const std::string& bits_text,
                 const std::string& bits_file, std::int64_t seed_flag,
                 const std::string& out_path) {
    const KeyValueConfig cfg = KeyValueConfig::parse_file(config_path);
    const ChannelParams params = ChannelParams::from_config(cfg);

    std::uint64_t seed = 0;
    if (seed_flag >= 0)
        seed = static_cast<std::uint64_t>(seed_flag);
    else if (cfg.has("seed"))
        seed = cfg.get_uint("seed");
    else
        throw std::runtime_error("simulate needs --seed (or a seed key in the config)");

    std::string text = bits_text;
    if (!bits_file.empty()) {
        std::ifstream in(bits_file);
        if (!in) throw std::runtime_error("cannot open bit file '" + bits_file + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    const std::vector<std::uint8_t> bits = read_bit_stream(text);

    const std::vector<std::int64_t> counts = simulate_reception(params, bits, Rng(seed));
    std::ostringstream out;
    write_counts_csv(out, counts);
    emit(out_path, out.str());
    return 0;
}

int run_sweep(const std::string& config_path, std::int64_t seed_flag,
              const std::string& out_path) {
    const KeyValueConfig cfg = KeyValueConfig::parse_file(config_path);
    SweepPlan plan = SweepPlan::from_config(cfg);
    if (plan.seeds.empty()) {
        if (seed_flag < 0)
            throw std::runtime_error("sweep needs seeds in the config or a --seed fallback");
        plan.seeds.push_back(static_cast<std::uint64_t>(seed_flag));
    }
    const std::vector<SweepRow> rows = run_sweep(plan);
    std::ostringstream out;
    write_ber_csv(out, rows);
    emit(out_path, out.str());
    for (const SweepRow& row : rows)
        if (!row.error.empty())
            std::cerr << "warning: point (" << row.scheme << ", " << row.param << '='
                      << row.value << ", seed " << row.seed << ") failed: " << row.error << '\n';
    return 0;
}

int run_bench(unsigned order, const std::vector<unsigned>& ks, const std::string& mode_text,
              std::uint64_t seed, std::size_t blocks, unsigned runs, bool no_timing,
              bool as_json, const std::string& out_path) {
    const Mode mode = mode_from_string(mode_text);
    TableCache cache;
    StorageOptions options;
    options.with_timing = !no_timing;
    options.seed = seed;
    options.blocks = blocks;
    options.runs = runs;
    const std::vector<StorageReport> reports =
        storage_runtime_report(order, ks, mode, cache, options);
    std::ostringstream out;
    if (as_json)
        write_storage_json(out, mode, reports);
    else
        write_storage_csv(out, reports);
    emit(out_path, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weight-minimizing run-length-limited codes over a diffusive channel"};
    app.require_subcommand(1);

    CodeArgs tables_args;
    std::string tables_save;
    CLI::App* tables_cmd = app.add_subcommand("tables", "build counting tables and report sizes");
    add_code_options(*tables_cmd, tables_args);
    tables_cmd->add_option("--save", tables_save, "write the binary table container here");

    CodeArgs encode_args;
    std::string encode_message;
    CLI::App* encode_cmd = app.add_subcommand("encode", "map a message index to its codeword");
    add_code_options(*encode_cmd, encode_args);
    encode_cmd->add_option("--m", encode_message, "message index (decimal)")->required();

    CodeArgs rank_args;
    std::string rank_word;
    CLI::App* rank_cmd = app.add_subcommand("rank", "rank an admissible codeword");
    add_code_options(*rank_cmd, rank_args);
    rank_cmd->add_option("--word", rank_word, "codeword bit-string")->required();

    unsigned correct_order = 1;
    std::string correct_word;
    CLI::App* correct_cmd = app.add_subcommand("correct", "repair a detected word");
    correct_cmd->add_option("--i", correct_order, "run-length order i")
        ->required()
        ->check(CLI::Range(1u, 64u));
    correct_cmd->add_option("--word", correct_word, "detected bit-string")->required();

    CodeArgs decode_args;
    std::string decode_word;
    CLI::App* decode_cmd =
        app.add_subcommand("decode", "correct, project and recover the message index");
    add_code_options(*decode_cmd, decode_args);
    decode_cmd->add_option("--word", decode_word, "detected bit-string")->required();

    std::string sim_config, sim_bits, sim_bits_file, sim_out;
    std::int64_t sim_seed = -1;
    CLI::App* sim_cmd = app.add_subcommand("simulate", "run the reception simulator on a bit stream");
    sim_cmd->add_option("--config", sim_config, "channel config file")->required();
    sim_cmd->add_option("--bits", sim_bits, "transmitted bits as an ASCII string");
    sim_cmd->add_option("--bits-file", sim_bits_file, "file holding the transmitted bits");
    sim_cmd->add_option("--seed", sim_seed, "random seed")->check(CLI::NonNegativeNumber);
    sim_cmd->add_option("--out", sim_out, "write the CSV here instead of stdout");

    std::string sweep_config, sweep_out;
    std::int64_t sweep_seed = -1;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "run a BER sweep plan");
    sweep_cmd->add_option("--config", sweep_config, "sweep plan config file")->required();
    sweep_cmd->add_option("--seed", sweep_seed, "seed fallback when the plan lists none")
        ->check(CLI::NonNegativeNumber);
    sweep_cmd->add_option("--out", sweep_out, "write the CSV here instead of stdout");

    unsigned bench_order = 3;
    std::vector<unsigned> bench_ks;
    std::string bench_mode = "E", bench_out;
    std::uint64_t bench_seed = 0;
    std::size_t bench_blocks = 1000;
    unsigned bench_runs = 5;
    bool bench_no_timing = false, bench_json = false;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "storage and runtime comparison of code realizations");
    bench_cmd->add_option("--i", bench_order, "run-length order i")
        ->required()
        ->check(CLI::Range(1u, 64u));
    bench_cmd->add_option("--ks", bench_ks, "info-bit grid, comma separated")
        ->required()
        ->delimiter(',');
    bench_cmd->add_option("--mode", bench_mode, "codebook mode: E or N")->default_val("E");
    bench_cmd->add_option("--seed", bench_seed, "random seed")->required();
    bench_cmd->add_option("--blocks", bench_blocks, "random blocks per timed run");
    bench_cmd->add_option("--runs", bench_runs, "timed repetitions");
    bench_cmd->add_flag("--no-timing", bench_no_timing, "storage metrics only");
    bench_cmd->add_flag("--json", bench_json, "emit JSON instead of CSV");
    bench_cmd->add_option("--out", bench_out, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
        if (tables_cmd->parsed()) return run_tables(tables_args, tables_save);
        if (encode_cmd->parsed()) return run_encode(encode_args, encode_message);
        if (rank_cmd->parsed()) return run_rank(rank_args, rank_word);
        if (correct_cmd->parsed()) return run_correct(correct_order, correct_word);
        if (decode_cmd->parsed()) return run_decode(decode_args, decode_word);
        if (sim_cmd->parsed()) {
            if (sim_bits.empty() == sim_bits_file.empty())
                throw CLI::ValidationError("simulate",
                                           "exactly one of --bits / --bits-file is required");
            return run_simulate(sim_config, sim_bits, sim_bits_file, sim_seed, sim_out);
        }
        if (sweep_cmd->parsed()) return run_sweep(sweep_config, sweep_seed, sweep_out);
        if (bench_cmd->parsed())
            return run_bench(bench_order, bench_ks, bench_mode, bench_seed, bench_blocks,
                             bench_runs, bench_no_timing, bench_json, bench_out);
        return 2;  // unreachable: a subcommand is required
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::cerr << "usage: run '" << (argc > 0 ? argv[0] : "rlim") << " --help'\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
