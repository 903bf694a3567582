#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semcomm/codec.hpp"
#include "semcomm/edgesim.hpp"
#include "semcomm/harness.hpp"
#include "semcomm/language.hpp"
#include "semcomm/matrix.hpp"

namespace semcomm {

/// Parsed language definition: either a message space with its
/// symbol mapping, a sentence language, or both. Unknown keys are
/// rejected so that typos fail loudly.
struct LanguageConfig {
    std::optional<MessageSpace> space;
    std::optional<StochasticMapping> mapping;
    std::optional<KnowledgeBasePair> kbs;           // over messages
    std::optional<SentenceLanguage> sentences;
    std::vector<ClassId> sentence_kb_destination;   // empty: matches source
};

LanguageConfig parse_language_config(const std::string& json_text);
LanguageConfig load_language_config(const std::string& path);

/// (V, lambda) sweep around a base edge configuration.
struct EdgeSweepConfig {
    edge::EdgeConfig base;
    std::vector<double> v_grid;       // defaults to {base.V}
    std::vector<double> lambda_grid;  // defaults to {base.lambda}
};

EdgeSweepConfig parse_edge_config(const std::string& json_text);
EdgeSweepConfig load_edge_config(const std::string& path);

struct FedRunConfig {
    edge::FedConfig fed;
    std::vector<double> w0;  // defaults to zeros
};

FedRunConfig parse_fed_config(const std::string& json_text);
FedRunConfig load_fed_config(const std::string& path);

/// Joint pmf (and optional statistic) for ib-solve / suff-check.
struct JointConfig {
    Matrix joint;
    std::vector<int> statistic;  // empty if absent
};

JointConfig parse_joint_config(const std::string& json_text);
JointConfig load_joint_config(const std::string& path);

struct LinkRunConfig {
    link::Experiment experiment;
    int max_retx = 3;
};

LinkRunConfig parse_link_config(const std::string& json_text);
LinkRunConfig load_link_config(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace semcomm
