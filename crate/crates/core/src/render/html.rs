use super::dot::emit_dot;
use crate::graph::DepGraph;
use crate::style::StyleConfig;

/// Client-side Graphviz renderer loaded by the preview page.
pub const DEFAULT_VIZ_URL: &str =
    "https://cdn.jsdelivr.net/npm/@viz-js/viz@3.11.0/lib/viz-standalone.js";

const DOT_OPEN: &str = "<script type=\"text/vnd.graphviz\" id=\"dot-source\">\n";
const DOT_CLOSE: &str = "</script>";

#[derive(Debug, Clone)]
pub struct HtmlOptions {
    pub title: String,
    pub script_url: String,
}

impl Default for HtmlOptions {
    fn default() -> Self {
        Self {
            title: "Dependency graph".to_string(),
            script_url: DEFAULT_VIZ_URL.to_string(),
        }
    }
}

fn html_escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

/// A single page that renders the embedded DOT source in the browser.
pub fn emit_html(graph: &DepGraph, style: &StyleConfig, options: &HtmlOptions) -> String {
    let dot = emit_dot(graph, style);
    let title = html_escape(&options.title);
    let placeholder = if graph.node_count() == 0 {
        "<p id=\"empty\">The dependency graph is empty: no labeled statements were found.</p>\n"
    } else {
        ""
    };
    format!(
        r#"<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{title}</title>
<script src="{url}"></script>
<style>
body {{ font-family: sans-serif; margin: 1.5rem; }}
#graph svg {{ max-width: 100%; height: auto; }}
</style>
</head>
<body>
<h1>{title}</h1>
{placeholder}<div id="graph"></div>
{DOT_OPEN}{dot}{DOT_CLOSE}
<script>
(function () {{
  var source = document.getElementById("dot-source").textContent;
  var target = document.getElementById("graph");
  if (typeof Viz === "undefined") {{
    target.textContent = "Could not load the Graphviz renderer.";
    return;
  }}
  Viz.instance().then(function (viz) {{
    target.appendChild(viz.renderSVGElement(source));
  }});
}})();
</script>
</body>
</html>
"#,
        url = html_escape(&options.script_url),
    )
}

/// The DOT blocks embedded in a page produced by [`emit_html`].
pub fn embedded_dot_blocks(html: &str) -> Vec<&str> {
    let mut blocks = Vec::new();
    let mut rest = html;
    while let Some(start) = rest.find(DOT_OPEN) {
        let body = &rest[start + DOT_OPEN.len()..];
        let Some(end) = body.find(DOT_CLOSE) else {
            break;
        };
        blocks.push(&body[..end]);
        rest = &body[end..];
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{NodeKind, StatementNode};

    #[test]
    fn empty_graph_placeholder() {
        let html = emit_html(
            &DepGraph::new(),
            &StyleConfig::default(),
            &HtmlOptions::default(),
        );
        assert!(html.contains("id=\"empty\""));
        assert_eq!(embedded_dot_blocks(&html), ["digraph G {\n}\n"]);
    }

    #[test]
    fn single_block_matching_dot() {
        let mut g = DepGraph::new();
        g.add_node(StatementNode::new("thm:<script>", NodeKind::Theorem));
        let style = StyleConfig::default();
        let html = emit_html(&g, &style, &HtmlOptions::default());
        assert!(!html.contains("id=\"empty\""));
        assert_eq!(embedded_dot_blocks(&html), [emit_dot(&g, &style).as_str()]);
        assert_eq!(html.matches("<script src=").count(), 1);
    }

    #[test]
    fn title_escaped() {
        let opts = HtmlOptions {
            title: "a<b>".into(),
            ..Default::default()
        };
        let html = emit_html(&DepGraph::new(), &StyleConfig::default(), &opts);
        assert!(html.contains("<title>a&lt;b&gt;</title>"));
    }
}
