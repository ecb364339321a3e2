import os

import streamlit as st
import requests
import pandas as pd

CONTEXT_LABELS = {
    "c0": "○", "c1": "●", "m00": "○/○", "m01": "●/○", "m11": "●/●",
    "V": "V", "i0": "i(○)", "i1": "i(●)", "i01": "i(○,●)",
}

st.set_page_config(page_title="ICL Negation-Words", page_icon="¬", layout="wide")

st.title("¬ ICL Negation-Word Dashboard")

# API base URL
API_BASE_URL = os.getenv("API_BASE_URL", "http://localhost:8000")


def api_get(path, params=None):
    """GET a JSON (or text) resource from the API."""
    try:
        response = requests.get(f"{API_BASE_URL}{path}", params=params)
        if response.status_code == 200:
            if response.headers.get("content-type", "").startswith("application/json"):
                return response.json()
            return response.text
        st.error(f"Error fetching {path}: {response.status_code} {response.text}")
        return None
    except requests.exceptions.RequestException as e:
        st.error(f"Connection error: {str(e)}")
        return None


def api_post(path, payload):
    try:
        response = requests.post(f"{API_BASE_URL}{path}", json=payload)
        if response.status_code == 200:
            return response.json()
        st.error(f"Error from {path}: {response.status_code} {response.json().get('detail')}")
        return None
    except requests.exceptions.RequestException as e:
        st.error(f"Connection error: {str(e)}")
        return None


# Sidebar for navigation
st.sidebar.title("Navigation")
page = st.sidebar.selectbox(
    "Choose a page",
    ["📋 Validity Table", "🧮 Census", "🔎 Classify", "🪜 Poset", "⚠️ Errata", "🧪 Countermodel Search"],
)

if page == "📋 Validity Table":
    st.header("Validity over the nine contexts")
    max_len = st.slider("Longest word", 0, 8, 5)
    data = api_get("/table", {"max_len": max_len})
    if data:
        df = pd.DataFrame(data["rows"]).set_index("word").rename(columns=CONTEXT_LABELS)
        st.dataframe(df, use_container_width=True)

elif page == "🧮 Census":
    st.header("Equivalence classes")
    max_len = st.slider("Longest word", 0, 12, 5)
    data = api_get("/census", {"max_len": max_len})
    if data:
        st.success(f"{data['count']} classes among words up to length {max_len}")
        df = pd.DataFrame(data["classes"])
        df["irreducible_members"] = df["irreducible_members"].map(", ".join)
        st.dataframe(df, use_container_width=True)

elif page == "🔎 Classify":
    st.header("Classify a negation-word")
    word = st.text_input("Word (~ and ! over p)", "!~~!~p")
    if st.button("Classify") and word:
        data = api_get("/classify", {"word": word})
        if data:
            col1, col2, col3 = st.columns(3)
            col1.metric("Rewrite normal form", data["normalized"])
            col2.metric("Signature class", data["normalized_semantic"])
            col3.metric("Irreducible", "yes" if data["irreducible"] else "no")
            st.dataframe(
                pd.DataFrame([list(data["signature"])], columns=list(CONTEXT_LABELS.values())),
                use_container_width=True,
            )

elif page == "🪜 Poset":
    st.header("Implication order on the fifteen classes")
    constants = st.checkbox("Adjoin 0, ⊥ and 1", value=True)
    dot = api_get("/poset", {"constants": constants, "format": "dot"})
    if dot:
        st.graphviz_chart(dot)
        with st.expander("DOT source"):
            st.code(dot)

elif page == "⚠️ Errata":
    st.header("Printed table audit")
    data = api_get("/errata")
    if data:
        if data["as_expected"]:
            st.success(f"{data['count']} mismatching cells, all explained")
        else:
            st.error(f"{data['count']} mismatching cells, not the expected set")
        st.dataframe(pd.DataFrame(data["mismatches"]), use_container_width=True)

elif page == "🧪 Countermodel Search":
    st.header("Bounded countermodel search")
    formula = st.text_input("Formula", "!~~p -> !!~p")
    col1, col2 = st.columns(2)
    max_worlds = col1.number_input("Most worlds", 1, 5, 4)
    max_height = col2.number_input("Longest chain (0 = unbounded)", 0, 5, 3)
    if st.button("Search") and formula:
        payload = {"formula": formula, "max_worlds": int(max_worlds), "max_height": int(max_height)}
        verdict = api_post("/valid", payload)
        if verdict:
            if verdict["valid"]:
                st.success(f"Valid in all {verdict['models_checked']} models within the bound")
            else:
                found = api_post("/countermodel", payload)
                if found:
                    st.warning(f"Refuted at {found['world']}: {found['picture']}")
                    st.json(found["model"])
