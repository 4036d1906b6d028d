//! HTTP backends for chat-completion and embedding endpoints.
//!
//! Request shapes:
//! - chat: `{model, messages: [{role, content}], temperature, top_p, max_tokens}`
//!   answered by `{choices: [{message: {content}}]}`
//! - embeddings: `{model, input}` answered by `{data: [{embedding: [...]}]}`

use std::time::Duration;

use serde_json::{json, Value};

use super::{ChatModel, ChatParams, Embedder, ModelError, RetryPolicy};
use crate::prompting::MessageSequence;

/// Sends one JSON POST and returns the response body of a 2xx reply.
pub trait Transport: Send + Sync {
    fn post_json(&self, url: &str, bearer: Option<&str>, body: &Value) -> Result<String, ModelError>;
}

pub struct UreqTransport {
    agent: ureq::Agent,
}

impl UreqTransport {
    pub fn new(timeout: Duration) -> Self {
        let agent = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .timeout_global(Some(timeout))
            .build()
            .into();
        UreqTransport { agent }
    }
}

impl Default for UreqTransport {
    fn default() -> Self {
        Self::new(Duration::from_secs(120))
    }
}

impl Transport for UreqTransport {
    fn post_json(&self, url: &str, bearer: Option<&str>, body: &Value) -> Result<String, ModelError> {
        let mut req = self
            .agent
            .post(url)
            .header("Content-Type", "application/json");
        if let Some(token) = bearer {
            req = req.header("Authorization", format!("Bearer {token}"));
        }
        let mut resp = req
            .send(body.to_string())
            .map_err(|e| ModelError::Transport(e.to_string()))?;
        let status = resp.status().as_u16();
        let text = resp
            .body_mut()
            .read_to_string()
            .map_err(|e| ModelError::Transport(e.to_string()))?;
        if !(200..300).contains(&status) {
            return Err(ModelError::Status { status, body: text });
        }
        Ok(text)
    }
}

pub struct HttpChat {
    endpoint: String,
    api_key: Option<String>,
    transport: Box<dyn Transport>,
    retry: RetryPolicy,
}

impl HttpChat {
    pub fn new(endpoint: &str, api_key: Option<String>, retry: RetryPolicy) -> Self {
        Self::with_transport(endpoint, api_key, retry, Box::new(UreqTransport::default()))
    }

    pub fn with_transport(
        endpoint: &str,
        api_key: Option<String>,
        retry: RetryPolicy,
        transport: Box<dyn Transport>,
    ) -> Self {
        HttpChat {
            endpoint: endpoint.to_string(),
            api_key,
            transport,
            retry,
        }
    }
}

pub fn chat_request_body(messages: &MessageSequence, params: &ChatParams) -> Value {
    let msgs: Vec<Value> = messages
        .messages()
        .iter()
        .map(|m| json!({"role": m.role.as_str(), "content": m.content}))
        .collect();
    json!({
        "model": params.model,
        "messages": msgs,
        "temperature": params.temperature,
        "top_p": params.nucleus_mass,
        "max_tokens": params.max_output_tokens,
    })
}

pub fn parse_chat_response(body: &str) -> Result<String, ModelError> {
    let v: Value = serde_json::from_str(body).map_err(|e| ModelError::Protocol(e.to_string()))?;
    v.pointer("/choices/0/message/content")
        .and_then(Value::as_str)
        .map(str::to_string)
        .ok_or_else(|| ModelError::Protocol("missing choices[0].message.content".into()))
}

pub fn parse_embedding_response(body: &str) -> Result<Vec<f64>, ModelError> {
    let v: Value = serde_json::from_str(body).map_err(|e| ModelError::Protocol(e.to_string()))?;
    let arr = v
        .pointer("/data/0/embedding")
        .and_then(Value::as_array)
        .ok_or_else(|| ModelError::Protocol("missing data[0].embedding".into()))?;
    arr.iter()
        .map(|x| {
            x.as_f64()
                .ok_or_else(|| ModelError::Protocol("non-numeric embedding component".into()))
        })
        .collect()
}

impl ChatModel for HttpChat {
    fn backend_id(&self) -> String {
        format!("http:{}", self.endpoint)
    }

    fn complete(&self, messages: &MessageSequence, params: &ChatParams) -> Result<String, ModelError> {
        params.validate()?;
        let body = chat_request_body(messages, params);
        let text = self.retry.run(|| {
            self.transport
                .post_json(&self.endpoint, self.api_key.as_deref(), &body)
        })?;
        parse_chat_response(&text)
    }
}

pub struct HttpEmbedder {
    endpoint: String,
    model: String,
    api_key: Option<String>,
    transport: Box<dyn Transport>,
    retry: RetryPolicy,
}

impl HttpEmbedder {
    pub fn new(endpoint: &str, model: &str, api_key: Option<String>, retry: RetryPolicy) -> Self {
        Self::with_transport(endpoint, model, api_key, retry, Box::new(UreqTransport::default()))
    }

    pub fn with_transport(
        endpoint: &str,
        model: &str,
        api_key: Option<String>,
        retry: RetryPolicy,
        transport: Box<dyn Transport>,
    ) -> Self {
        HttpEmbedder {
            endpoint: endpoint.to_string(),
            model: model.to_string(),
            api_key,
            transport,
            retry,
        }
    }
}

impl Embedder for HttpEmbedder {
    fn backend_id(&self) -> String {
        format!("http:{}#{}", self.endpoint, self.model)
    }

    fn embed_raw(&self, text: &str) -> Result<Vec<f64>, ModelError> {
        let body = json!({"model": self.model, "input": text});
        let resp = self.retry.run(|| {
            self.transport
                .post_json(&self.endpoint, self.api_key.as_deref(), &body)
        })?;
        parse_embedding_response(&resp)
    }
}
