#include "semcomm/config.hpp"

#include <algorithm>

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace semcomm {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw config_error("config: malformed JSON");
    if (!j.is_object()) throw config_error("config: top level must be an object");
    return j;
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed,
                    const std::string& where) {
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) {
                ok = true;
                break;
            }
        if (!ok) throw config_error("config: unknown key '" + key + "' in " + where);
    }
}

double as_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw config_error("config: " + where + " must be a number");
    return j.get<double>();
}

long as_integer(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw config_error("config: " + where + " must be an integer");
    return j.get<long>();
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw config_error("config: " + where + " must be a string");
    return j.get<std::string>();
}

std::vector<double> number_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw config_error("config: " + where + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(as_number(v, where + " entry"));
    return out;
}

std::vector<std::string> string_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw config_error("config: " + where + " must be an array");
    std::vector<std::string> out;
    out.reserve(j.size());
    for (const auto& v : j) out.push_back(as_string(v, where + " entry"));
    return out;
}

Matrix matrix_from(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw config_error("config: " + where + " must be a 2-d array");
    const std::size_t cols = j.front().is_array() ? j.front().size() : 0;
    if (cols == 0) throw config_error("config: " + where + " rows must be nonempty arrays");
    Matrix m(j.size(), cols);
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            throw config_error("config: " + where + " is ragged");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = as_number(j[r][c], where + " entry");
    }
    return m;
}

std::vector<ClassId> class_map(const json& j, const std::vector<std::string>& messages,
                               const std::string& where) {
    std::vector<ClassId> out(messages.size());
    if (j.is_array()) {
        if (j.size() != messages.size())
            throw config_error("config: " + where + " size does not match message count");
        for (std::size_t i = 0; i < messages.size(); ++i)
            out[i] = static_cast<ClassId>(as_integer(j[i], where + " entry"));
        return out;
    }
    if (j.is_object()) {
        if (j.size() != messages.size())
            throw config_error("config: " + where + " must cover every message exactly once");
        for (std::size_t i = 0; i < messages.size(); ++i) {
            const auto it = j.find(messages[i]);
            if (it == j.end())
                throw config_error("config: " + where + " is missing message '" + messages[i] + "'");
            out[i] = static_cast<ClassId>(as_integer(*it, where + " entry"));
        }
        return out;
    }
    throw config_error("config: " + where + " must be an array or an object");
}

FadingProfile fading_from(const json& j, const std::string& where) {
    reject_unknown(j, {"kind", "mean_snr", "block_length"}, where);
    FadingProfile p;
    const std::string kind = j.contains("kind") ? as_string(j["kind"], where + ".kind") : "none";
    if (kind == "none")
        p.kind = FadingProfile::Kind::none;
    else if (kind == "rayleigh" || kind == "rayleigh-block")
        p.kind = FadingProfile::Kind::rayleigh_block;
    else
        throw config_error("config: " + where + ".kind must be 'none' or 'rayleigh'");
    if (j.contains("mean_snr")) p.mean_snr = as_number(j["mean_snr"], where + ".mean_snr");
    if (j.contains("block_length"))
        p.block_length = static_cast<int>(as_integer(j["block_length"], where + ".block_length"));
    return p;
}

SyntacticCodec codec_from(const json& j, const std::string& where) {
    reject_unknown(j, {"source_code", "channel_code", "repetition"}, where);
    SyntacticCodec codec;
    if (j.contains("source_code")) {
        const std::string s = as_string(j["source_code"], where + ".source_code");
        if (s == "fixed" || s == "fixed-length")
            codec.source_code = SourceCodeKind::fixed_length;
        else if (s == "huffman")
            codec.source_code = SourceCodeKind::huffman;
        else
            throw config_error("config: unknown source code '" + s + "'");
    }
    if (j.contains("channel_code")) {
        const std::string s = as_string(j["channel_code"], where + ".channel_code");
        if (s == "none")
            codec.channel_code = ChannelCodeKind::none;
        else if (s == "repetition")
            codec.channel_code = ChannelCodeKind::repetition;
        else if (s == "hamming74")
            codec.channel_code = ChannelCodeKind::hamming74;
        else
            throw config_error("config: unknown channel code '" + s + "'");
    }
    if (j.contains("repetition"))
        codec.repetition_factor = static_cast<int>(as_integer(j["repetition"], where + ".repetition"));
    check_valid(codec);
    return codec;
}

std::vector<ClassId> sentence_meaning(const json& j, const SentenceLanguage& lang,
                                      const std::string& where) {
    reject_unknown(j, {"mode", "slots", "classes"}, where);
    const std::string mode = j.contains("mode") ? as_string(j["mode"], where + ".mode") : "identity";
    if (mode == "identity") {
        std::vector<ClassId> out(lang.sentences.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<ClassId>(i);
        return out;
    }
    if (mode == "project") {
        if (!j.contains("slots")) throw config_error("config: " + where + " project needs slots");
        std::vector<int> keep;
        for (const auto& v : j["slots"])
            keep.push_back(static_cast<int>(as_integer(v, where + ".slots entry")));
        return project_meaning(lang, keep);
    }
    if (mode == "explicit") {
        if (!j.contains("classes")) throw config_error("config: " + where + " explicit needs classes");
        if (!j["classes"].is_array() || j["classes"].size() != lang.sentences.size())
            throw config_error("config: " + where + ".classes size must match sentence count");
        std::vector<ClassId> out(lang.sentences.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = static_cast<ClassId>(as_integer(j["classes"][i], where + ".classes entry"));
        return out;
    }
    throw config_error("config: " + where + ".mode must be identity, project, or explicit");
}

LanguageConfig language_from(const json& j) {
    reject_unknown(j,
                   {"messages", "prior", "mapping", "kb_source", "kb_destination", "vocabulary",
                    "slots", "exclusions", "meaning", "kb_destination_meaning"},
                   "language config");
    LanguageConfig cfg;

    if (j.contains("messages")) {
        MessageSpace space;
        space.messages = string_list(j["messages"], "messages");
        if (j.contains("prior"))
            space.prior = number_list(j["prior"], "prior");
        else
            space.prior.assign(space.messages.size(), 1.0 / static_cast<double>(space.messages.size()));
        if (j.contains("kb_source"))
            space.meaning_class = class_map(j["kb_source"], space.messages, "kb_source");
        else {
            space.meaning_class.resize(space.messages.size());
            for (std::size_t i = 0; i < space.messages.size(); ++i)
                space.meaning_class[i] = static_cast<ClassId>(i);
        }
        check_valid(space);

        KnowledgeBasePair kbs;
        kbs.kb_source = space.meaning_class;
        kbs.kb_destination = j.contains("kb_destination")
                                 ? class_map(j["kb_destination"], space.messages, "kb_destination")
                                 : kbs.kb_source;
        cfg.kbs = std::move(kbs);

        if (j.contains("mapping")) {
            const json& m = j["mapping"];
            reject_unknown(m, {"alphabet", "rows", "assign"}, "mapping");
            StochasticMapping mapping;
            if (!m.contains("alphabet")) throw config_error("config: mapping needs an alphabet");
            mapping.alphabet = string_list(m["alphabet"], "mapping.alphabet");
            if (m.contains("rows")) {
                mapping.cond = matrix_from(m["rows"], "mapping.rows");
            } else if (m.contains("assign")) {
                std::vector<std::size_t> assignment;
                for (const auto& msg : space.messages) {
                    const auto it = m["assign"].find(msg);
                    if (it == m["assign"].end())
                        throw config_error("config: mapping.assign is missing message '" + msg + "'");
                    const std::string sym = as_string(*it, "mapping.assign entry");
                    std::size_t idx = mapping.alphabet.size();
                    for (std::size_t x = 0; x < mapping.alphabet.size(); ++x)
                        if (mapping.alphabet[x] == sym) idx = x;
                    if (idx == mapping.alphabet.size())
                        throw config_error("config: mapping.assign uses unknown symbol '" + sym + "'");
                    assignment.push_back(idx);
                }
                mapping = StochasticMapping::deterministic(mapping.alphabet, assignment);
            } else {
                throw config_error("config: mapping needs rows or assign");
            }
            check_valid(mapping, space);
            cfg.mapping = std::move(mapping);
        }
        cfg.space = std::move(space);
    }

    if (j.contains("slots")) {
        GrammarSpec grammar;
        if (j.contains("vocabulary"))
            grammar.vocabulary = string_list(j["vocabulary"], "vocabulary");
        if (!j["slots"].is_array()) throw config_error("config: slots must be an array");
        for (const auto& slot : j["slots"]) grammar.slots.push_back(string_list(slot, "slots entry"));
        if (j.contains("exclusions")) {
            for (const auto& e : j["exclusions"]) {
                reject_unknown(e, {"slot_a", "word_a", "slot_b", "word_b"}, "exclusions entry");
                GrammarSpec::Exclusion x;
                x.slot_a = static_cast<int>(as_integer(e.at("slot_a"), "exclusions.slot_a"));
                x.word_a = as_string(e.at("word_a"), "exclusions.word_a");
                x.slot_b = static_cast<int>(as_integer(e.at("slot_b"), "exclusions.slot_b"));
                x.word_b = as_string(e.at("word_b"), "exclusions.word_b");
                grammar.exclusions.push_back(std::move(x));
            }
        }
        SentenceLanguage lang = build_sentence_language(grammar);
        if (j.contains("vocabulary")) {
            // Declared vocabulary must agree with what the slots span.
            const auto declared = string_list(j["vocabulary"], "vocabulary");
            if (declared != lang.vocabulary)
                throw config_error("config: vocabulary does not match the words used in slots");
        }
        if (j.contains("meaning"))
            lang.meaning_class = sentence_meaning(j["meaning"], lang, "meaning");
        if (j.contains("kb_destination_meaning"))
            cfg.sentence_kb_destination =
                sentence_meaning(j["kb_destination_meaning"], lang, "kb_destination_meaning");
        cfg.sentences = std::move(lang);
    } else if (j.contains("exclusions") || j.contains("meaning") ||
               j.contains("kb_destination_meaning") || j.contains("vocabulary")) {
        throw config_error("config: sentence-language keys require slots");
    }

    if (!cfg.space && !cfg.sentences)
        throw config_error("config: language config needs messages or slots");
    return cfg;
}

}  // namespace

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

LanguageConfig parse_language_config(const std::string& json_text) {
    return language_from(parse(json_text));
}

LanguageConfig load_language_config(const std::string& path) {
    return parse_language_config(read_file(path));
}

EdgeSweepConfig parse_edge_config(const std::string& json_text) {
    const json j = parse(json_text);
    reject_unknown(j,
                   {"arrival_rate", "slot_duration", "bit_options", "power_options", "cpu_options",
                    "fading", "bandwidth", "noise_power", "accuracy_curves", "cycles_per_sample",
                    "delay_constraint", "V", "V_grid", "lambda", "lambda_grid", "kappa",
                    "confidence_noise", "horizon"},
                   "edge config");
    EdgeSweepConfig cfg;
    edge::EdgeConfig& c = cfg.base;
    if (j.contains("arrival_rate")) c.arrival_rate = as_number(j["arrival_rate"], "arrival_rate");
    if (j.contains("slot_duration")) c.slot_duration = as_number(j["slot_duration"], "slot_duration");
    if (j.contains("bit_options")) {
        c.bit_options.clear();
        for (const auto& v : j["bit_options"])
            c.bit_options.push_back(static_cast<int>(as_integer(v, "bit_options entry")));
    }
    if (j.contains("power_options")) c.power_options = number_list(j["power_options"], "power_options");
    if (j.contains("cpu_options")) c.cpu_options = number_list(j["cpu_options"], "cpu_options");
    if (j.contains("fading")) c.channel = fading_from(j["fading"], "fading");
    if (j.contains("bandwidth")) c.bandwidth = as_number(j["bandwidth"], "bandwidth");
    if (j.contains("noise_power")) c.noise_power = as_number(j["noise_power"], "noise_power");
    if (j.contains("accuracy_curves")) {
        c.accuracy_curves.clear();
        for (const auto& curve : j["accuracy_curves"]) {
            reject_unknown(curve, {"max_accuracy", "rate"}, "accuracy_curves entry");
            edge::LearnerCurve lc;
            lc.max_accuracy = as_number(curve.at("max_accuracy"), "accuracy_curves.max_accuracy");
            lc.rate = as_number(curve.at("rate"), "accuracy_curves.rate");
            c.accuracy_curves.push_back(lc);
        }
    }
    if (j.contains("cycles_per_sample"))
        c.cycles_per_sample = as_number(j["cycles_per_sample"], "cycles_per_sample");
    if (j.contains("delay_constraint"))
        c.delay_constraint = as_number(j["delay_constraint"], "delay_constraint");
    if (j.contains("V")) c.V = as_number(j["V"], "V");
    if (j.contains("lambda")) c.lambda = as_number(j["lambda"], "lambda");
    if (j.contains("kappa")) c.kappa = as_number(j["kappa"], "kappa");
    if (j.contains("confidence_noise"))
        c.confidence_noise = as_number(j["confidence_noise"], "confidence_noise");
    if (j.contains("horizon")) c.horizon = as_integer(j["horizon"], "horizon");
    cfg.v_grid = j.contains("V_grid") ? number_list(j["V_grid"], "V_grid")
                                      : std::vector<double>{c.V};
    cfg.lambda_grid = j.contains("lambda_grid") ? number_list(j["lambda_grid"], "lambda_grid")
                                                : std::vector<double>{c.lambda};
    check_valid(c);
    return cfg;
}

EdgeSweepConfig load_edge_config(const std::string& path) {
    return parse_edge_config(read_file(path));
}

FedRunConfig parse_fed_config(const std::string& json_text) {
    const json j = parse(json_text);
    reject_unknown(j, {"centers", "curvatures", "example_counts", "rounds", "step_size", "w0"},
                   "fed config");
    FedRunConfig cfg;
    if (!j.contains("centers")) throw config_error("config: fed config needs centers");
    for (const auto& c : j["centers"]) {
        if (c.is_number())
            cfg.fed.centers.push_back({c.get<double>()});
        else
            cfg.fed.centers.push_back(number_list(c, "centers entry"));
    }
    const std::size_t n = cfg.fed.centers.size();
    cfg.fed.curvatures = j.contains("curvatures") ? number_list(j["curvatures"], "curvatures")
                                                  : std::vector<double>(n, 1.0);
    cfg.fed.example_counts = j.contains("example_counts")
                                 ? number_list(j["example_counts"], "example_counts")
                                 : std::vector<double>(n, 1.0);
    if (j.contains("rounds")) cfg.fed.rounds = static_cast<int>(as_integer(j["rounds"], "rounds"));
    if (j.contains("step_size")) {
        cfg.fed.step_size = as_number(j["step_size"], "step_size");
    } else {
        double amax = 0.0;
        for (double a : cfg.fed.curvatures) amax = std::max(amax, a);
        cfg.fed.step_size = amax > 0.0 ? 1.0 / (2.0 * amax) : 0.1;
    }
    check_valid(cfg.fed);
    cfg.w0 = j.contains("w0") ? number_list(j["w0"], "w0")
                              : std::vector<double>(cfg.fed.centers.front().size(), 0.0);
    return cfg;
}

FedRunConfig load_fed_config(const std::string& path) {
    return parse_fed_config(read_file(path));
}

JointConfig parse_joint_config(const std::string& json_text) {
    const json j = parse(json_text);
    reject_unknown(j, {"joint", "statistic", "row_labels", "col_labels"}, "joint config");
    JointConfig cfg;
    if (!j.contains("joint")) throw config_error("config: joint config needs a joint table");
    cfg.joint = matrix_from(j["joint"], "joint");
    if (j.contains("statistic")) {
        for (const auto& v : j["statistic"])
            cfg.statistic.push_back(static_cast<int>(as_integer(v, "statistic entry")));
    }
    return cfg;
}

JointConfig load_joint_config(const std::string& path) {
    return parse_joint_config(read_file(path));
}

LinkRunConfig parse_link_config(const std::string& json_text) {
    const json j = parse(json_text);
    reject_unknown(j,
                   {"language", "language_file", "codec", "snr_db", "trials", "seed", "tau",
                    "fading", "max_retx"},
                   "link config");
    LinkRunConfig cfg;
    LanguageConfig lang;
    if (j.contains("language"))
        lang = language_from(j["language"]);
    else if (j.contains("language_file"))
        lang = load_language_config(as_string(j["language_file"], "language_file"));
    else
        throw config_error("config: link config needs language or language_file");
    if (!lang.sentences) throw config_error("config: link experiments need a sentence language");
    cfg.experiment.language = *lang.sentences;
    cfg.experiment.kb_destination = lang.sentence_kb_destination;

    if (j.contains("codec")) cfg.experiment.codec = codec_from(j["codec"], "codec");
    if (j.contains("snr_db")) {
        const json& g = j["snr_db"];
        if (g.is_array()) {
            cfg.experiment.snr_grid_db = number_list(g, "snr_db");
        } else if (g.is_object()) {
            reject_unknown(g, {"from", "to", "step"}, "snr_db");
            const double from = as_number(g.at("from"), "snr_db.from");
            const double to = as_number(g.at("to"), "snr_db.to");
            const double step = as_number(g.at("step"), "snr_db.step");
            if (!(step > 0.0)) throw config_error("config: snr_db.step must be > 0");
            for (double s = from; s <= to + 1e-9; s += step)
                cfg.experiment.snr_grid_db.push_back(s);
        } else {
            cfg.experiment.snr_grid_db = {as_number(g, "snr_db")};
        }
    }
    if (j.contains("trials")) cfg.experiment.trials = as_integer(j["trials"], "trials");
    if (j.contains("seed"))
        cfg.experiment.seed = static_cast<std::uint64_t>(as_integer(j["seed"], "seed"));
    if (j.contains("tau")) cfg.experiment.tau = as_number(j["tau"], "tau");
    if (j.contains("fading")) {
        const FadingProfile p = fading_from(j["fading"], "fading");
        cfg.experiment.fading = p.kind;
        if (p.kind == FadingProfile::Kind::rayleigh_block && p.block_length >= 1)
            cfg.experiment.fade_block_bits = p.block_length;
    }
    if (j.contains("max_retx"))
        cfg.max_retx = static_cast<int>(as_integer(j["max_retx"], "max_retx"));
    return cfg;
}

LinkRunConfig load_link_config(const std::string& path) {
    return parse_link_config(read_file(path));
}

}  // namespace semcomm
