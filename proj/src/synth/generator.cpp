// Copyright 2026 The BridgeGuard Authors
// SPDX-License-Identifier: Apache-2.0

#include <bridgeguard/synth/generator.hpp>

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>

#include <bridgeguard/common/error.hpp>
#include <bridgeguard/common/keccak.hpp>
#include <bridgeguard/common/parallel.hpp>
#include <bridgeguard/common/random.hpp>
#include <bridgeguard/common/stable_hash.hpp>

namespace bridgeguard::synth {

using ingest::FrameKind;

namespace {

    template <std::size_t N>
    FixedBytes<N> random_bytes(Rng& rng) {
        FixedBytes<N> out;
        for (auto& b : out.bytes) b = static_cast<std::uint8_t>(rng() & 0xff);
        return out;
    }

    void append_word(Bytes& out, std::uint64_t v) {
        for (int i = 0; i < 24; ++i) out.push_back(0);
        for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
    }

    Hash32 address_topic(const Address& a) {
        Hash32 h;
        std::copy(a.bytes.begin(), a.bytes.end(), h.bytes.begin() + 12);
        return h;
    }

    //! Assembles a call tree in execution order, so creation order equals pre-order and
    //! log indices follow emission order.
    class TxBuilder {
      public:
        struct Node {
            ingest::CallFrame frame;
            std::vector<std::unique_ptr<Node>> children;
        };

        TxBuilder(Address sender, FrameKind kind, Address callee, std::optional<std::string_view> signature,
                  std::uint64_t value = 0)
            : sender_{sender} {
            root_.frame = make_frame(kind, sender, callee, signature, value, 0);
        }

        Node* root() { return &root_; }

        Node* call(Node* parent, FrameKind kind, Address callee, std::optional<std::string_view> signature,
                   std::uint64_t value = 0) {
            // Calls made from delegated code run in the caller's storage context.
            const Address caller = context_of(parent);
            auto child = std::make_unique<Node>();
            child->frame = make_frame(kind, caller, callee, signature, value, parent->frame.depth + 1);
            auto* raw = child.get();
            parent->children.push_back(std::move(child));
            contexts_.emplace_back(raw, kind == FrameKind::kDelegateCall ? caller : callee);
            return raw;
        }

        void emit(Node* frame, std::string_view event_signature, std::vector<Hash32> topics_rest, Bytes data) {
            ingest::LogEntry log;
            log.emitter = context_of(frame);
            log.topic0 = event_topic(event_signature);
            log.topics_rest = std::move(topics_rest);
            log.data = std::move(data);
            log.log_index = logs_.size();
            log.origin = ingest::LogOrigin{frame->frame.order, static_cast<std::uint32_t>(frame->children.size())};
            logs_.push_back(std::move(log));
        }

        ingest::TxRecord finish(Rng& rng) {
            ingest::TxRecord r;
            r.tx_hash = random_bytes<32>(rng);
            r.block_number = 15'000'000 + uniform_below(rng, 3'000'000);
            r.sender = sender_;
            r.root_frame = convert(root_);
            r.logs = std::move(logs_);
            return r;
        }

      private:
        ingest::CallFrame make_frame(FrameKind kind, Address caller, Address callee,
                                     std::optional<std::string_view> signature, std::uint64_t value,
                                     std::uint32_t depth) {
            ingest::CallFrame f;
            f.kind = kind;
            f.caller = caller;
            f.callee = callee;
            if (signature) f.selector = function_selector(*signature);
            f.value = Uint256::from_u64(value);
            f.depth = depth;
            f.order = next_order_++;
            return f;
        }

        Address context_of(Node* n) const {
            if (n == &root_) return root_.frame.callee;
            for (const auto& [node, ctx] : contexts_) {
                if (node == n) return ctx;
            }
            return n->frame.callee;
        }

        static ingest::CallFrame convert(const Node& n) {
            ingest::CallFrame f = n.frame;
            f.children.clear();
            for (const auto& c : n.children) f.children.push_back(convert(*c));
            return f;
        }

        Address sender_;
        Node root_;
        std::vector<std::pair<Node*, Address>> contexts_;
        std::vector<ingest::LogEntry> logs_;
        std::uint32_t next_order_{0};
    };

    //! Router entry point, optionally behind a proxy. Returns the frame executing router code.
    TxBuilder::Node* enter_router(TxBuilder& b, TxBuilder::Node* parent, const BridgeAddresses& bridge,
                                  std::string_view signature, std::uint64_t value, bool proxied) {
        if (!proxied) return b.call(parent, FrameKind::kCall, bridge.router, signature, value);
        auto* proxy = b.call(parent, FrameKind::kCall, bridge.router_proxy, signature, value);
        return b.call(proxy, FrameKind::kDelegateCall, bridge.router, signature);
    }

    struct Entry {
        std::unique_ptr<TxBuilder> builder;
        TxBuilder::Node* router{nullptr};
    };

    //! Builds the outermost call from `sender` into the router.
    Entry open_router(Address sender, const BridgeAddresses& bridge, std::string_view signature,
                      std::uint64_t value, bool proxied) {
        Entry e;
        if (proxied) {
            e.builder = std::make_unique<TxBuilder>(sender, FrameKind::kCall, bridge.router_proxy, signature, value);
            e.router = e.builder->call(e.builder->root(), FrameKind::kDelegateCall, bridge.router, signature);
        } else {
            e.builder = std::make_unique<TxBuilder>(sender, FrameKind::kCall, bridge.router, signature, value);
            e.router = e.builder->root();
        }
        return e;
    }

    void maybe_oracle(TxBuilder& b, TxBuilder::Node* router, const BridgeAddresses& bridge, const NoiseConfig& noise,
                      Rng& rng) {
        if (bernoulli(rng, noise.extra_call_prob)) {
            b.call(router, FrameKind::kStaticCall, bridge.oracle, "latestRoundData()");
        }
    }

    void maybe_fee(TxBuilder& b, TxBuilder::Node* router, const BridgeAddresses& bridge, const NoiseConfig& noise,
                   Rng& rng, const Address& payer, std::uint64_t amount) {
        if (bernoulli(rng, noise.extra_call_prob)) {
            auto* fee = b.call(router, FrameKind::kCall, bridge.fee_collector, "collect(address,uint256)");
            Bytes data;
            append_word(data, amount / 1000 + 1);
            b.emit(fee, "FeeCollected(address,uint256)", {address_topic(payer)}, std::move(data));
        }
    }

    SynthTx finish(TxBuilder& b, Rng& rng, Label label, std::string template_id) {
        SynthTx tx;
        tx.record = b.finish(rng);
        tx.label = label;
        tx.template_id = std::move(template_id);
        return tx;
    }

    void check_noise(const NoiseConfig& n) {
        auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!ok(n.extra_call_prob) || !ok(n.depth_jitter)) {
            throw Error{ErrorCode::kInvalidConfig, "noise probabilities must lie in [0, 1]"};
        }
    }

}  // namespace

BridgeAddresses BridgeAddresses::derive(std::uint64_t seed) {
    Rng rng{mix_seed(seed, stable_hash("bridge-addresses"))};
    BridgeAddresses a;
    for (auto* addr : {&a.router, &a.router_proxy, &a.token, &a.weth, &a.vault, &a.verifier, &a.fee_collector,
                       &a.oracle}) {
        *addr = random_bytes<20>(rng);
    }
    return a;
}

SynthTx gen_normal_deposit(std::uint64_t seed, const NoiseConfig& noise, const BridgeAddresses& bridge) {
    check_noise(noise);
    Rng rng{seed};
    const auto user = random_bytes<20>(rng);
    const std::uint64_t amount = 1 + uniform_below(rng, 1'000'000'000);
    const std::uint64_t dest_chain = 2 + uniform_below(rng, 100);
    auto [b, router] = open_router(user, bridge, "deposit(address,uint256,uint256)", 0,
                                   bernoulli(rng, noise.depth_jitter));
    maybe_oracle(*b, router, bridge, noise, rng);
    auto* pull = b->call(router, FrameKind::kCall, bridge.token, "transferFrom(address,address,uint256)");
    b->call(pull, FrameKind::kCall, bridge.vault, "onTokenTransfer(address,uint256,bytes)");
    Bytes lock_data;
    append_word(lock_data, amount);
    b->emit(pull, "Lock(address,address,uint256)", {address_topic(user), address_topic(bridge.vault)},
            std::move(lock_data));
    maybe_fee(*b, router, bridge, noise, rng, user, amount);
    Bytes dep;
    append_word(dep, amount);
    append_word(dep, dest_chain);
    b->emit(router, "Deposit(address,address,uint256,uint256)", {address_topic(user), address_topic(bridge.token)},
            std::move(dep));
    return finish(*b, rng, Label::kNormal, "normal_deposit");
}

SynthTx gen_normal_deposit_eth(std::uint64_t seed, const NoiseConfig& noise, const BridgeAddresses& bridge) {
    check_noise(noise);
    Rng rng{seed};
    const auto user = random_bytes<20>(rng);
    const std::uint64_t amount = 1 + uniform_below(rng, 1'000'000'000);
    const std::uint64_t dest_chain = 2 + uniform_below(rng, 100);
    auto [b, router] = open_router(user, bridge, "depositETH(uint256)", amount, bernoulli(rng, noise.depth_jitter));
    maybe_oracle(*b, router, bridge, noise, rng);
    auto* wrap = b->call(router, FrameKind::kCall, bridge.weth, "deposit()", amount);
    Bytes wrapped;
    append_word(wrapped, amount);
    b->emit(wrap, "Deposit(address,uint256)", {address_topic(bridge.router)}, wrapped);
    auto* move = b->call(router, FrameKind::kCall, bridge.weth, "transfer(address,uint256)");
    b->call(move, FrameKind::kCall, bridge.vault, "onTokenTransfer(address,uint256,bytes)");
    b->emit(move, "Transfer(address,address,uint256)", {address_topic(bridge.router), address_topic(bridge.vault)},
            wrapped);
    maybe_fee(*b, router, bridge, noise, rng, user, amount);
    Bytes dep;
    append_word(dep, amount);
    append_word(dep, dest_chain);
    b->emit(router, "Deposit(address,address,uint256,uint256)", {address_topic(user), address_topic(bridge.weth)},
            std::move(dep));
    return finish(*b, rng, Label::kNormal, "normal_deposit_eth");
}

SynthTx gen_normal_withdrawal(std::uint64_t seed, const NoiseConfig& noise, const BridgeAddresses& bridge) {
    check_noise(noise);
    Rng rng{seed};
    const auto relayer = random_bytes<20>(rng);
    const auto user = random_bytes<20>(rng);
    const std::uint64_t amount = 1 + uniform_below(rng, 1'000'000'000);
    const std::uint64_t src_chain = 2 + uniform_below(rng, 100);
    auto [b, router] = open_router(relayer, bridge, "withdraw(bytes32,address,uint256,bytes)", 0,
                                   bernoulli(rng, noise.depth_jitter));
    b->call(router, FrameKind::kStaticCall, bridge.verifier, "verify(bytes32,bytes)");
    maybe_oracle(*b, router, bridge, noise, rng);
    auto* unlock = b->call(router, FrameKind::kCall, bridge.token, "unlock(address,uint256)");
    auto* release = b->call(unlock, FrameKind::kCall, bridge.vault, "release(address,address,uint256)");
    b->call(release, FrameKind::kCall, user, std::nullopt, amount);
    Bytes data;
    append_word(data, amount);
    b->emit(unlock, "Unlock(address,address,uint256)", {address_topic(bridge.vault), address_topic(user)}, data);
    maybe_fee(*b, router, bridge, noise, rng, user, amount);
    append_word(data, src_chain);
    b->emit(router, "Withdrawal(address,address,uint256,uint256)", {address_topic(user), address_topic(bridge.token)},
            std::move(data));
    return finish(*b, rng, Label::kNormal, "normal_withdrawal");
}

SynthTx gen_attack_src(std::uint64_t seed, const NoiseConfig& noise, const BridgeAddresses& bridge, bool fake_token) {
    check_noise(noise);
    Rng rng{seed};
    const auto attacker = random_bytes<20>(rng);
    const auto fake = random_bytes<20>(rng);
    const std::uint64_t amount = 1'000'000 + uniform_below(rng, 1'000'000'000);
    const std::uint64_t dest_chain = 2 + uniform_below(rng, 100);
    auto [b, router] = open_router(attacker, bridge, "deposit(address,uint256,uint256)", 0,
                                   bernoulli(rng, noise.depth_jitter));
    maybe_oracle(*b, router, bridge, noise, rng);
    if (fake_token) {
        auto* pull = b->call(router, FrameKind::kCall, fake, "transferFrom(address,address,uint256)");
        Bytes t;
        append_word(t, amount);
        b->emit(pull, "Transfer(address,address,uint256)", {address_topic(attacker), address_topic(bridge.vault)},
                std::move(t));
    }
    maybe_fee(*b, router, bridge, noise, rng, attacker, amount);
    Bytes dep;
    append_word(dep, amount);
    append_word(dep, dest_chain);
    b->emit(router, "Deposit(address,address,uint256,uint256)",
            {address_topic(attacker), address_topic(fake_token ? fake : bridge.token)}, std::move(dep));
    return finish(*b, rng, Label::kAttackSrc, fake_token ? "attack_src_fake_token" : "attack_src_skip_transfer");
}

SynthTx gen_attack_tgt(std::uint64_t seed, const NoiseConfig& noise, const BridgeAddresses& bridge, bool create2) {
    check_noise(noise);
    Rng rng{seed};
    const auto attacker = random_bytes<20>(rng);
    const auto contract = random_bytes<20>(rng);
    const std::uint64_t amount = 1'000'000 + uniform_below(rng, 1'000'000'000);
    const std::uint64_t src_chain = 2 + uniform_below(rng, 100);
    TxBuilder b{attacker, create2 ? FrameKind::kCreate2 : FrameKind::kCreate, contract, std::nullopt};
    auto* ctor = b.root();
    auto* router = enter_router(b, ctor, bridge, "withdraw(bytes32,address,uint256,bytes)", 0,
                                bernoulli(rng, noise.depth_jitter));
    b.call(router, FrameKind::kStaticCall, bridge.verifier, "verify(bytes32,bytes)");
    maybe_oracle(b, router, bridge, noise, rng);
    auto* mint = b.call(router, FrameKind::kCall, bridge.token, "mint(address,uint256)");
    Bytes data;
    append_word(data, amount);
    b.emit(mint, "Unlock(address,address,uint256)", {address_topic(bridge.vault), address_topic(contract)}, data);
    maybe_fee(b, router, bridge, noise, rng, contract, amount);
    append_word(data, src_chain);
    b.emit(router, "Withdrawal(address,address,uint256,uint256)",
           {address_topic(contract), address_topic(bridge.token)}, std::move(data));
    b.call(ctor, FrameKind::kSelfDestruct, attacker, std::nullopt);
    return finish(b, rng, Label::kAttackTgt, create2 ? "attack_tgt_create2" : "attack_tgt_create");
}

std::size_t GenConfig::n_attacks() const {
    return static_cast<std::size_t>(std::llround(static_cast<double>(n_normal) * attack_rate));
}

std::size_t GenConfig::n_attack_src() const {
    return static_cast<std::size_t>(std::llround(static_cast<double>(n_attacks()) * src_tgt_ratio));
}

void GenConfig::validate() const {
    if (!(attack_rate > 0.0 && attack_rate < 1.0)) {
        throw Error{ErrorCode::kInvalidConfig, "attack_rate must lie in (0, 1)"};
    }
    if (!(src_tgt_ratio >= 0.0 && src_tgt_ratio <= 1.0)) {
        throw Error{ErrorCode::kInvalidConfig, "src_tgt_ratio must lie in [0, 1]"};
    }
    check_noise(noise);
}

nlohmann::json GenConfig::to_json() const {
    return {{"n_normal", n_normal},
            {"attack_rate", attack_rate},
            {"src_tgt_ratio", src_tgt_ratio},
            {"noise", {{"extra_call_prob", noise.extra_call_prob}, {"depth_jitter", noise.depth_jitter}}},
            {"seed", seed},
            {"chain_id", chain_id}};
}

GenConfig GenConfig::from_json(const nlohmann::json& j) {
    GenConfig c;
    try {
        c.n_normal = j.value("n_normal", c.n_normal);
        c.attack_rate = j.value("attack_rate", c.attack_rate);
        c.src_tgt_ratio = j.value("src_tgt_ratio", c.src_tgt_ratio);
        if (j.contains("noise")) {
            c.noise.extra_call_prob = j["noise"].value("extra_call_prob", c.noise.extra_call_prob);
            c.noise.depth_jitter = j["noise"].value("depth_jitter", c.noise.depth_jitter);
        }
        c.seed = j.value("seed", c.seed);
        c.chain_id = j.value("chain_id", c.chain_id);
    } catch (const nlohmann::json::exception& e) {
        throw Error{ErrorCode::kInvalidConfig, std::string{"synth config: "} + e.what()};
    }
    c.validate();
    return c;
}

Dataset gen_dataset(const GenConfig& cfg, std::size_t workers) {
    cfg.validate();
    const auto bridge = BridgeAddresses::derive(cfg.seed);
    const std::size_t n_attack = cfg.n_attacks();
    const std::size_t n_src = cfg.n_attack_src();
    const std::size_t total = cfg.n_normal + n_attack;

    std::vector<SynthTx> txs(total);
    parallel_for(total, workers, [&](std::size_t i) {
        const std::uint64_t s = mix_seed(cfg.seed, i);
        Rng pick{mix_seed(s, stable_hash("template"))};
        if (i < cfg.n_normal) {
            const double u = uniform01(pick);
            if (u < 0.45) {
                txs[i] = gen_normal_deposit(s, cfg.noise, bridge);
            } else if (u < 0.55) {
                txs[i] = gen_normal_deposit_eth(s, cfg.noise, bridge);
            } else {
                txs[i] = gen_normal_withdrawal(s, cfg.noise, bridge);
            }
        } else if (i < cfg.n_normal + n_src) {
            // Exploits are crafted calls replayed by the attacker, so benign noise stays off.
            txs[i] = gen_attack_src(s, NoiseConfig{}, bridge, bernoulli(pick, 0.5));
        } else {
            txs[i] = gen_attack_tgt(s, NoiseConfig{}, bridge, bernoulli(pick, 0.5));
        }
        txs[i].record.chain_id = cfg.chain_id;
    });

    Rng order{mix_seed(cfg.seed, stable_hash("corpus-order"))};
    shuffle(txs, order);

    Dataset d;
    d.manifest.entries.reserve(total);
    for (std::size_t i = 0; i < total; ++i) {
        d.manifest.entries.push_back({"traces/" + std::to_string(i) + ".json", txs[i].label, cfg.chain_id});
    }
    d.txs = std::move(txs);
    return d;
}

void write_dataset(const std::filesystem::path& dir, const Dataset& dataset, const GenConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(dir / "traces", ec);
    if (ec) throw Error{ErrorCode::kIo, "cannot create " + (dir / "traces").string() + ": " + ec.message()};
    for (std::size_t i = 0; i < dataset.txs.size(); ++i) {
        ingest::write_trace_file(dir / dataset.manifest.entries[i].source, dataset.txs[i].record);
    }
    auto manifest = dataset.manifest;
    manifest.base_dir = dir;
    ingest::write_manifest(dir / "manifest.jsonl", manifest);

    std::ofstream side{dir / "synth_config.json"};
    if (!side) throw Error{ErrorCode::kIo, "cannot write " + (dir / "synth_config.json").string()};
    nlohmann::json templates = nlohmann::json::array();
    for (const auto& t : dataset.txs) templates.push_back(t.template_id);
    side << nlohmann::json{{"generator", "bridgeguard-synth"}, {"version", 1}, {"config", cfg.to_json()},
                           {"templates", templates}}
                .dump(2)
         << '\n';
}

}  // namespace bridgeguard::synth
