#include "rheaom/model_io.hpp"

#include <cstring>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rheaom {

using nlohmann::json;

namespace {

const char kB64Table[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

std::string base64_encode(const unsigned char* data, size_t len) {
    std::string out;
    out.reserve((len + 2) / 3 * 4);
    for (size_t i = 0; i < len; i += 3) {
        const unsigned b0 = data[i];
        const unsigned b1 = i + 1 < len ? data[i + 1] : 0;
        const unsigned b2 = i + 2 < len ? data[i + 2] : 0;
        out.push_back(kB64Table[b0 >> 2]);
        out.push_back(kB64Table[((b0 & 0x3) << 4) | (b1 >> 4)]);
        out.push_back(i + 1 < len ? kB64Table[((b1 & 0xF) << 2) | (b2 >> 6)] : '=');
        out.push_back(i + 2 < len ? kB64Table[b2 & 0x3F] : '=');
    }
    return out;
}

int b64_value(char c) {
    if (c >= 'A' && c <= 'Z') return c - 'A';
    if (c >= 'a' && c <= 'z') return c - 'a' + 26;
    if (c >= '0' && c <= '9') return c - '0' + 52;
    if (c == '+') return 62;
    if (c == '/') return 63;
    return -1;
}

std::vector<unsigned char> base64_decode(const std::string& text) {
    if (text.size() % 4 != 0)
        throw ModelIoError(ModelIoError::Code::TruncatedPayload, "base64 payload length not a multiple of 4");
    std::vector<unsigned char> out;
    out.reserve(text.size() / 4 * 3);
    for (size_t i = 0; i < text.size(); i += 4) {
        int v[4];
        int pad = 0;
        for (int k = 0; k < 4; ++k) {
            const char c = text[i + static_cast<size_t>(k)];
            if (c == '=' && k >= 2 && i + 4 == text.size()) {
                v[k] = 0;
                ++pad;
            } else {
                v[k] = b64_value(c);
                if (v[k] < 0)
                    throw ModelIoError(ModelIoError::Code::TruncatedPayload, "invalid base64 character");
            }
        }
        out.push_back(static_cast<unsigned char>((v[0] << 2) | (v[1] >> 4)));
        if (pad < 2) out.push_back(static_cast<unsigned char>(((v[1] & 0xF) << 4) | (v[2] >> 2)));
        if (pad < 1) out.push_back(static_cast<unsigned char>(((v[2] & 0x3) << 6) | v[3]));
    }
    return out;
}

std::string encode_doubles(const std::vector<double>& values) {
    return base64_encode(reinterpret_cast<const unsigned char*>(values.data()),
                         values.size() * sizeof(double));
}

std::vector<double> decode_doubles(const std::string& field, const std::string& text,
                                   size_t expected) {
    const auto bytes = base64_decode(text);
    if (bytes.size() % sizeof(double) != 0)
        throw ModelIoError(ModelIoError::Code::TruncatedPayload,
                           field + ": payload is not a whole number of doubles");
    if (bytes.size() != expected * sizeof(double))
        throw ModelIoError(ModelIoError::Code::ShapeMismatch,
                           field + ": payload holds " + std::to_string(bytes.size() / sizeof(double)) +
                               " doubles, header expects " + std::to_string(expected));
    std::vector<double> values(expected);
    std::memcpy(values.data(), bytes.data(), bytes.size());
    return values;
}

std::string timestamp_utc() {
    char buf[32];
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace

std::string model_to_json(const LinearSoftmaxModel& model) {
    json doc;
    doc["kind"] = model_kind_name(model.kind);
    doc["F"] = model.feature_dim;
    doc["A"] = model.action_count;
    doc["adam_t"] = model.adam_t;
    doc["created"] = timestamp_utc();
    doc["weights"] = encode_doubles(model.weights);
    doc["bias"] = encode_doubles(model.bias);
    doc["m_weights"] = encode_doubles(model.m_weights);
    doc["m_bias"] = encode_doubles(model.m_bias);
    doc["v_weights"] = encode_doubles(model.v_weights);
    doc["v_bias"] = encode_doubles(model.v_bias);
    return doc.dump(2) + "\n";
}

LinearSoftmaxModel model_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ModelIoError(ModelIoError::Code::CorruptHeader, std::string("invalid json: ") + e.what());
    }
    LinearSoftmaxModel m;
    try {
        m.kind = model_kind_from_name(doc.at("kind").get<std::string>());
        m.feature_dim = doc.at("F").get<int>();
        m.action_count = doc.at("A").get<int>();
        m.adam_t = doc.at("adam_t").get<int64_t>();
    } catch (const std::exception& e) {
        throw ModelIoError(ModelIoError::Code::CorruptHeader, std::string("bad header: ") + e.what());
    }
    if (m.feature_dim <= 0 || m.action_count <= 0 || m.adam_t < 0)
        throw ModelIoError(ModelIoError::Code::ShapeMismatch,
                           "non-positive dimensions in model header");
    const size_t wsize = static_cast<size_t>(m.feature_dim) * static_cast<size_t>(m.action_count);
    const size_t bsize = static_cast<size_t>(m.action_count);
    try {
        m.weights = decode_doubles("weights", doc.at("weights").get<std::string>(), wsize);
        m.bias = decode_doubles("bias", doc.at("bias").get<std::string>(), bsize);
        m.m_weights = decode_doubles("m_weights", doc.at("m_weights").get<std::string>(), wsize);
        m.m_bias = decode_doubles("m_bias", doc.at("m_bias").get<std::string>(), bsize);
        m.v_weights = decode_doubles("v_weights", doc.at("v_weights").get<std::string>(), wsize);
        m.v_bias = decode_doubles("v_bias", doc.at("v_bias").get<std::string>(), bsize);
    } catch (const json::exception& e) {
        throw ModelIoError(ModelIoError::Code::CorruptHeader,
                           std::string("missing payload field: ") + e.what());
    }
    return m;
}

void save_model(const LinearSoftmaxModel& model, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write model file: " + path);
    out << model_to_json(model);
}

LinearSoftmaxModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json(buf.str());
}

}  // namespace rheaom
