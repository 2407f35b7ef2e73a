// Copyright 2026 The tcue Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tcue/server.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <deque>
#include <iostream>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/asio/strand.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "tcue/errors.hpp"
#include "tcue/records.hpp"
#include "tcue/session.hpp"

namespace tcue
{

namespace net = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = net::ip::tcp;
using nlohmann::json;

std::string scenes_json(const SceneLibrary & scenes)
{
  json list = json::array();
  for (const auto & id : scenes.ids()) {
    list.push_back(json::parse(save_scene(scenes.get(id))));
  }
  return json{{"scenes", std::move(list)}}.dump();
}

namespace
{

struct Shared
{
  SceneLibrary scenes;
  ServerConfig cfg;
  std::atomic<std::size_t> active{0};
  std::atomic<std::uint64_t> next_id{1};

  bool reserve()
  {
    auto n = active.load();
    while (n < cfg.max_sessions) {
      if (active.compare_exchange_weak(n, n + 1)) {
        return true;
      }
    }
    return false;
  }

  void release() {--active;}
};

void log_line(const std::string & line)
{
  static std::mutex mu;
  const std::lock_guard lock(mu);
  std::cerr << "tcue-server: " << line << '\n';
}

class WsSession : public std::enable_shared_from_this<WsSession>
{
public:
  WsSession(tcp::socket && socket, std::shared_ptr<Shared> shared)
  : ws_(std::move(socket)), shared_(std::move(shared)), timer_(ws_.get_executor())
  {
  }

  void run(http::request<http::string_body> req)
  {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.text(true);
    ws_.async_accept(
      req, beast::bind_front_handler(&WsSession::on_accept, shared_from_this()));
  }

private:
  struct Outbound
  {
    std::string text;
  };

  void on_accept(beast::error_code ec)
  {
    if (ec) {
      return;
    }
    do_read();
  }

  void do_read()
  {
    ws_.async_read(buffer_, beast::bind_front_handler(&WsSession::on_read, shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t)
  {
    if (ec) {
      abandon();
      return;
    }
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    handle(text);
    if (!closing_) {
      do_read();
    }
  }

  void handle(const std::string & text)
  {
    SessionMessage msg;
    try {
      msg = decode_message(text);
    } catch (const MalformedMessage & e) {
      send_error("MalformedMessage", e.what());
      return;
    }
    if (last_client_seq_ && msg.seq <= *last_client_seq_) {
      send_error("MalformedMessage", "seq must increase");
      return;
    }
    last_client_seq_ = msg.seq;

    switch (msg.kind) {
      case MessageKind::SessionStart:
        open(msg.payload);
        return;
      case MessageKind::GazeInput:
        if (!engine_ || engine_->phase() == SessionPhase::Closed) {
          send_error("SessionClosed", "no open session");
          return;
        }
        try {
          engine_->ingest_gaze(gaze_input_from_json(msg.payload));
        } catch (const MalformedMessage & e) {
          send_error("MalformedMessage", e.what());
        }
        return;
      case MessageKind::SessionEnd:
        if (!engine_ || engine_->phase() == SessionPhase::Closed) {
          send_error("SessionClosed", "no open session");
          return;
        }
        finish();
        return;
      default:
        send_error("MalformedMessage", "unexpected message kind from client");
        return;
    }
  }

  void open(const json & payload)
  {
    if (engine_) {
      send_error("SessionActive", "this connection already ran a session");
      return;
    }
    const auto id = payload.find("scene_id");
    if (id == payload.end() || !id->is_string()) {
      send_error("MalformedMessage", "SessionStart.scene_id must be a string");
      return;
    }
    const auto scene_id = id->get<std::string>();
    if (!shared_->scenes.contains(scene_id)) {
      send_error("SceneNotFound", "unknown scene '" + scene_id + "'");
      return;
    }
    RunConfig cfg = shared_->cfg.run_defaults;
    try {
      if (const auto c = payload.find("config"); c != payload.end()) {
        cfg = run_config_from_json(*c, cfg);
      }
      cfg.scene_id = scene_id;
      cfg.validate();
    } catch (const InputError & e) {
      send_error("ValidationError", e.what());
      return;
    }
    if (!shared_->reserve()) {
      send_error("CapacityExceeded", "server is at its session limit");
      return;
    }
    holds_slot_ = true;

    char name[32];
    std::snprintf(
      name, sizeof(name), "session-%06llu",
      static_cast<unsigned long long>(shared_->next_id.fetch_add(1)));
    engine_.emplace(shared_->scenes.get(scene_id), cfg, name);
    send(engine_->start_ack(), false);
    log_line("opened " + engine_->id() + " on scene " + scene_id);

    period_ = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(1.0 / cfg.tick_hz));
    next_tick_ = std::chrono::steady_clock::now() + period_;
    arm_timer();
  }

  void arm_timer()
  {
    timer_.expires_at(next_tick_);
    timer_.async_wait(beast::bind_front_handler(&WsSession::on_timer, shared_from_this()));
  }

  void on_timer(beast::error_code ec)
  {
    if (ec || !engine_ || engine_->phase() == SessionPhase::Closed) {
      return;
    }
    for (auto & m : engine_->tick()) {
      const bool droppable = m.kind == MessageKind::StateSnapshot;
      send(std::move(m), droppable);
    }
    if (engine_->phase() == SessionPhase::Complete) {
      finish();
      return;
    }
    next_tick_ += period_;
    arm_timer();
  }

  void close_engine()
  {
    timer_.cancel();
    if (shared_->cfg.output_dir) {
      try {
        persist_session(engine_->result(), engine_->replay_token(), *shared_->cfg.output_dir);
      } catch (const Error & e) {
        log_line(std::string("persist failed: ") + e.what());
      }
    }
    if (holds_slot_) {
      holds_slot_ = false;
      shared_->release();
    }
  }

  void finish()
  {
    SessionMessage end = engine_->close();
    close_engine();
    log_line("closed " + engine_->id());
    send(std::move(end), false);
    closing_ = true;
    if (!writing_) {
      do_close();
    }
  }

  // Peer went away without SessionEnd.
  void abandon()
  {
    if (engine_ && engine_->phase() != SessionPhase::Closed) {
      engine_->close();
      close_engine();
      log_line("peer dropped " + engine_->id());
    }
    timer_.cancel();
  }

  void send_error(std::string_view code, std::string_view text)
  {
    send(SessionMessage{MessageKind::Error, 0, error_payload(code, text)}, false);
  }

  // Frames are sequenced here so errors and engine output share one
  // strictly increasing counter. Snapshots are the only droppable frames.
  void send(SessionMessage msg, bool droppable)
  {
    if (droppable && queue_.size() >= shared_->cfg.max_queued) {
      return;
    }
    msg.seq = out_seq_++;
    queue_.push_back(Outbound{encode_message(msg)});
    if (!writing_) {
      do_write();
    }
  }

  void do_write()
  {
    writing_ = true;
    ws_.async_write(
      net::buffer(queue_.front().text),
      beast::bind_front_handler(&WsSession::on_write, shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t)
  {
    writing_ = false;
    if (ec) {
      queue_.clear();
      abandon();
      return;
    }
    queue_.pop_front();
    if (!queue_.empty()) {
      do_write();
    } else if (closing_) {
      do_close();
    }
  }

  void do_close()
  {
    ws_.async_close(
      websocket::close_code::normal,
      [self = shared_from_this()](beast::error_code) {});
  }

  websocket::stream<beast::tcp_stream> ws_;
  std::shared_ptr<Shared> shared_;
  net::steady_timer timer_;
  beast::flat_buffer buffer_;
  std::deque<Outbound> queue_;
  bool writing_{false};
  bool closing_{false};
  bool holds_slot_{false};
  std::uint64_t out_seq_{0};
  std::optional<std::uint64_t> last_client_seq_;
  std::optional<SessionEngine> engine_;
  std::chrono::steady_clock::duration period_{};
  std::chrono::steady_clock::time_point next_tick_;
};

class HttpSession : public std::enable_shared_from_this<HttpSession>
{
public:
  HttpSession(tcp::socket && socket, std::shared_ptr<Shared> shared)
  : stream_(std::move(socket)), shared_(std::move(shared))
  {
  }

  void run()
  {
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(
      stream_, buffer_, req_, beast::bind_front_handler(&HttpSession::on_read, shared_from_this()));
  }

private:
  void on_read(beast::error_code ec, std::size_t)
  {
    if (ec) {
      return;
    }
    const std::string_view target(req_.target().data(), req_.target().size());
    const auto path = target.substr(0, target.find('?'));
    if (websocket::is_upgrade(req_)) {
      if (path == "/session") {
        stream_.expires_never();
        std::make_shared<WsSession>(stream_.release_socket(), shared_)->run(std::move(req_));
        return;
      }
      respond(http::status::not_found, "text/plain", "not found\n");
      return;
    }
    if (path == "/scenes") {
      if (req_.method() != http::verb::get) {
        respond(http::status::method_not_allowed, "text/plain", "method not allowed\n");
      } else {
        respond(http::status::ok, "application/json", scenes_json(shared_->scenes));
      }
      return;
    }
    respond(http::status::not_found, "text/plain", "not found\n");
  }

  void respond(http::status status, std::string_view type, std::string body)
  {
    auto res = std::make_shared<http::response<http::string_body>>(status, req_.version());
    res->set(http::field::content_type, std::string(type));
    res->set(http::field::access_control_allow_origin, "*");
    res->keep_alive(false);
    res->body() = std::move(body);
    res->prepare_payload();
    http::async_write(
      stream_, *res, [self = shared_from_this(), res](beast::error_code, std::size_t) {
        beast::error_code ignored;
        self->stream_.socket().shutdown(tcp::socket::shutdown_send, ignored);
      });
  }

  beast::tcp_stream stream_;
  std::shared_ptr<Shared> shared_;
  beast::flat_buffer buffer_;
  http::request<http::string_body> req_;
};

}  // namespace

struct SessionServer::Impl
{
  net::io_context ioc;
  std::shared_ptr<Shared> shared;
  std::optional<tcp::acceptor> acceptor;
  std::vector<std::thread> threads;
  std::uint16_t port{0};
  std::mutex mu;
  std::condition_variable stopped_cv;
  bool stopped{false};

  void do_accept()
  {
    acceptor->async_accept(
      net::make_strand(ioc), [this](beast::error_code ec, tcp::socket socket) {
        if (ec == net::error::operation_aborted) {
          return;
        }
        if (!ec) {
          std::make_shared<HttpSession>(std::move(socket), shared)->run();
        }
        do_accept();
      });
  }
};

SessionServer::SessionServer(SceneLibrary scenes, ServerConfig cfg)
: impl_(std::make_unique<Impl>())
{
  cfg.run_defaults.validate();
  if (cfg.threads < 1) {
    throw ValidationError("server threads must be at least 1");
  }
  impl_->shared = std::make_shared<Shared>();
  impl_->shared->scenes = std::move(scenes);
  impl_->shared->cfg = std::move(cfg);
}

SessionServer::~SessionServer()
{
  stop();
}

void SessionServer::start()
{
  const auto & cfg = impl_->shared->cfg;
  beast::error_code ec;
  const auto address = net::ip::make_address(cfg.address, ec);
  if (ec) {
    throw IoError("bad bind address '" + cfg.address + "'");
  }
  const tcp::endpoint endpoint(address, cfg.port);
  auto & acc = impl_->acceptor.emplace(net::make_strand(impl_->ioc));
  if (acc.open(endpoint.protocol(), ec); ec) {
    throw IoError("cannot open socket: " + ec.message());
  }
  acc.set_option(net::socket_base::reuse_address(true), ec);
  if (acc.bind(endpoint, ec); ec) {
    throw IoError("cannot bind " + cfg.address + ":" + std::to_string(cfg.port) + ": " +
            ec.message());
  }
  if (acc.listen(net::socket_base::max_listen_connections, ec); ec) {
    throw IoError("cannot listen: " + ec.message());
  }
  impl_->port = acc.local_endpoint().port();
  impl_->do_accept();
  for (int i = 0; i < cfg.threads; ++i) {
    impl_->threads.emplace_back([this] {impl_->ioc.run();});
  }
}

std::uint16_t SessionServer::port() const
{
  return impl_->port;
}

void SessionServer::stop()
{
  if (!impl_) {
    return;
  }
  impl_->ioc.stop();
  for (auto & t : impl_->threads) {
    if (t.joinable()) {
      t.join();
    }
  }
  impl_->threads.clear();
  {
    const std::lock_guard lock(impl_->mu);
    impl_->stopped = true;
  }
  impl_->stopped_cv.notify_all();
}

void SessionServer::wait()
{
  std::unique_lock lock(impl_->mu);
  impl_->stopped_cv.wait(lock, [this] {return impl_->stopped;});
}

std::size_t SessionServer::active_sessions() const
{
  return impl_->shared->active.load();
}

}  // namespace tcue
